// spectral.cpp — Spectral densities, memory kernel, bath discretization

#include "thermobath/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "thermobath/errors.hpp"

namespace thermobath {
namespace {
constexpr const char* kModule = "spectral";
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxPanels = 20000;
} // namespace

std::string to_string(SpectralFamily family) {
    return family == SpectralFamily::ohmic ? "ohmic" : "power-law";
}

void SpectralModel::validate() const {
    if (!(eta > 0.0)) throw ParameterError(kModule, "coupling strength eta must be positive");
    if (!(cutoff > 0.0)) throw ParameterError(kModule, "cutoff frequency must be positive");
    if (!(exponent > 0.0)) throw ParameterError(kModule, "exponent s must be positive");
    if (family == SpectralFamily::ohmic && exponent != 1.0)
        throw ParameterError(kModule, "ohmic family requires s = 1");
}

double spectral_density(const SpectralModel& model, double omega) {
    if (!(omega > 0.0)) return 0.0;
    return model.eta * std::pow(omega, model.exponent) * std::exp(-omega / model.cutoff);
}

double kernel(const SpectralModel& model, double tau) {
    model.validate();
    tau = std::abs(tau);
    if (model.family == SpectralFamily::ohmic) {
        const double wt = model.cutoff * tau;
        return 2.0 * model.eta / kPi * model.cutoff / (1.0 + wt * wt);
    }
    return kernel_by_quadrature(model, tau).value;
}

QuadratureResult kernel_by_quadrature(const SpectralModel& model, double tau, const QuadratureOptions& opts) {
    model.validate();
    tau = std::abs(tau);
    const double upper = 50.0 * model.cutoff;
    const double s = model.exponent;

    // J(w)/w = eta w^(s-1) e^(-w/wc); the smooth part is h(w).
    auto h = [&](double w) { return 2.0 / kPi * model.eta * std::exp(-w / model.cutoff) * std::cos(w * tau); };

    std::vector<double> cuts{0.0};
    if (tau > 0.0) {
        const double period = kPi / tau;
        const double panels = upper / period;
        const double stride = panels > kMaxPanels ? std::ceil(panels / kMaxPanels) : 1.0;
        for (double w = 0.5 * period; w < upper; w += stride * period) cuts.push_back(w);
    }
    // Beyond a few cutoffs the integrand is tiny; one more cut keeps the
    // first panel from spanning the whole range when tau = 0.
    if (cuts.size() == 1) cuts.push_back(std::min(upper, 5.0 * model.cutoff));
    cuts.push_back(upper);

    // First panel: w = u^(1/s) removes the w^(s-1) endpoint behaviour.
    const double b1 = cuts[1];
    auto first = [&](double u) {
        const double w = std::pow(u, 1.0 / s);
        return h(w) / s;
    };
    QuadratureResult head = integrate(first, 0.0, std::pow(b1, s), opts);

    auto rest = [&](double w) { return std::pow(w, s - 1.0) * h(w); };
    std::vector<double> tail(cuts.begin() + 1, cuts.end());
    QuadratureResult body = integrate(rest, tail, opts);

    QuadratureResult out;
    out.value = head.value + body.value;
    out.error = head.error + body.error;
    out.evaluations = head.evaluations + body.evaluations;
    out.subdivisions = head.subdivisions + body.subdivisions;
    return out;
}

double DiscreteBathSpec::recurrence_time() const { return 2.0 * kPi / spacing; }

void DiscreteBathSpec::validate() const {
    if (omega.size() < 1) throw ParameterError(kModule, "bath needs at least one oscillator");
    if (coupling.size() != omega.size() || mass.size() != omega.size())
        throw ParameterError(kModule, "bath arrays must have equal length");
    if (!(omega > 0.0).all()) throw ParameterError(kModule, "all oscillator frequencies must be positive");
    if (!(mass > 0.0).all()) throw ParameterError(kModule, "all oscillator masses must be positive");
}

DiscreteBathSpec discretize(const SpectralModel& model, std::size_t n, double omega_max) {
    model.validate();
    if (n < 1) throw ParameterError(kModule, "oscillator count must be at least 1");
    if (!(omega_max > 0.0)) throw ParameterError(kModule, "omega_max must be positive");

    DiscreteBathSpec spec;
    const auto N = static_cast<Eigen::Index>(n);
    spec.spacing = omega_max / static_cast<double>(n);
    spec.omega = (Eigen::ArrayXd::LinSpaced(N, 0.0, static_cast<double>(N - 1)) + 0.5) * spec.spacing;
    spec.mass = Eigen::ArrayXd::Ones(N);
    spec.coupling.resize(N);
    for (Eigen::Index k = 0; k < N; ++k) {
        const double w = spec.omega(k);
        spec.coupling(k) = std::sqrt(2.0 / kPi * spec.mass(k) * w * spectral_density(model, w) * spec.spacing);
    }
    return spec;
}

double counterterm_stiffness(const DiscreteBathSpec& spec) {
    return (spec.coupling.square() / (spec.mass * spec.omega.square())).sum();
}

double reconstructed_kernel(const DiscreteBathSpec& spec, double tau) {
    return (spec.coupling.square() / (spec.mass * spec.omega.square()) * (spec.omega * tau).cos()).sum();
}

double kappa_from_bath(const DiscreteBathSpec& spec, double alpha_tilde) {
    return counterterm_stiffness(spec) * alpha_tilde;
}

double alpha_tilde_for_kappa(const DiscreteBathSpec& spec, double kappa) {
    const double s = counterterm_stiffness(spec);
    if (!(s > 0.0)) throw ParameterError(kModule, "bath has zero coupling; kappa cannot be reached");
    return kappa / s;
}

double alpha_tilde_for_kappa(const SpectralModel& model, double kappa) {
    return kappa / kernel(model, 0.0);
}

} // namespace thermobath
