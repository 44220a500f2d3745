// microscopic_two.cpp — Field of local baths coupled through a weight function

#include "thermobath/microscopic_two.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "thermobath/errors.hpp"
#include "thermobath/parallel.hpp"

namespace thermobath {
namespace {
constexpr const char* kModule = "microscopic_two";
const QuadratureOptions kQuad{1e-13, 1e-12, 4000};

// Breakpoints in u = x - X resolving the peak of g and, for the temperature
// integral, the seam where X wraps around the box.
std::vector<double> u_breakpoints(const WeightFunction& w, std::optional<double> seam) {
    const double half = 0.5 * w.box_length();
    std::vector<double> pts{-half, half, 0.0};
    if (w.kind() == WeightKind::gaussian) {
        for (double k : {1.0, 2.0, 4.0, 8.0, 16.0}) {
            pts.push_back(k * w.sigma());
            pts.push_back(-k * w.sigma());
        }
    } else {
        pts.push_back(w.support_radius());
        pts.push_back(-w.support_radius());
    }
    if (seam) pts.push_back(*seam);
    std::vector<double> out;
    for (double u : pts)
        if (u >= -half && u <= half) out.push_back(u);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Eigen::Index sample_count(double t_final, double dt) {
    return static_cast<Eigen::Index>(std::floor(t_final / dt + 1e-9)) + 1;
}
} // namespace

WeightFunction WeightFunction::gaussian(double sigma, double box_length) {
    if (!(sigma > 0.0)) throw ParameterError(kModule, "weight width sigma must be positive");
    if (!(box_length > 0.0)) throw ParameterError(kModule, "universe size L must be positive");
    WeightFunction w;
    w.kind_ = WeightKind::gaussian;
    w.sigma_ = sigma;
    w.L_ = box_length;
    return w;
}

WeightFunction WeightFunction::box(double width, double height, double box_length) {
    if (!(width > 0.0) || !(height > 0.0)) throw ParameterError(kModule, "box weight needs positive width and height");
    if (!(box_length >= width)) throw ParameterError(kModule, "box weight wider than the universe");
    WeightFunction w;
    w.kind_ = WeightKind::box;
    w.sigma_ = width;
    w.height_ = height;
    w.L_ = box_length;
    return w;
}

WeightFunction WeightFunction::tabulated(Eigen::ArrayXd u, Eigen::ArrayXd g, double box_length) {
    if (!(box_length > 0.0)) throw ParameterError(kModule, "universe size L must be positive");
    if ((g < 0.0).any()) throw ParameterError(kModule, "weight function must be non-negative");
    WeightFunction w;
    w.kind_ = WeightKind::tabulated;
    w.L_ = box_length;
    w.table_ = MonotoneCubic(std::move(u), std::move(g));
    w.sigma_ = 0.5 * (w.table_.hi() - w.table_.lo());
    return w;
}

double WeightFunction::wrap(double u) const { return u - L_ * std::round(u / L_); }

double WeightFunction::g(double u) const {
    u = wrap(u);
    switch (kind_) {
    case WeightKind::gaussian: return std::exp(-0.5 * u * u / (sigma_ * sigma_));
    case WeightKind::box: return std::abs(u) < 0.5 * sigma_ ? height_ : 0.0;
    case WeightKind::tabulated: return (u < table_.lo() || u > table_.hi()) ? 0.0 : table_.value(u);
    }
    return 0.0;
}

double WeightFunction::dg(double u) const {
    u = wrap(u);
    switch (kind_) {
    case WeightKind::gaussian: return -u / (sigma_ * sigma_) * std::exp(-0.5 * u * u / (sigma_ * sigma_));
    case WeightKind::box: return 0.0;
    case WeightKind::tabulated: return (u < table_.lo() || u > table_.hi()) ? 0.0 : table_.derivative(u);
    }
    return 0.0;
}

double WeightFunction::support_radius() const {
    switch (kind_) {
    case WeightKind::gaussian: return 12.0 * sigma_;
    case WeightKind::box: return 0.5 * sigma_;
    case WeightKind::tabulated: return std::max(std::abs(table_.lo()), std::abs(table_.hi()));
    }
    return L_;
}

double weight_G(const WeightFunction& w, double x, double X) { return w.g(x - X); }

double weight_F(const WeightFunction& w, double x, double X) { return w.g(x - X) + x * w.dg(x - X); }

double eta_eff_two(const WeightFunction& w, double eta, double x) {
    auto f = [&](double u) {
        const double F = w.g(u) + x * w.dg(u);
        return F * F;
    };
    const auto pts = u_breakpoints(w, std::nullopt);
    return eta * integrate(f, pts, kQuad).value / w.box_length();
}

double d_eff_two(const WeightFunction& w, double eta, const TemperatureField& field, double x) {
    const double L = w.box_length();
    const double half = 0.5 * L;
    if (field.domain().lo > -half || field.domain().hi < half)
        throw DomainError(kModule, "temperature field must cover the universe [-L/2, L/2]");
    auto site = [&](double u) {
        double X = x - u;
        if (X >= half) X -= L;
        if (X < -half) X += L;
        return std::clamp(X, -half, half);
    };
    auto f = [&](double u) {
        const double F = w.g(u) + x * w.dg(u);
        return F * F * field.eval(site(u));
    };
    const double seam = x >= 0.0 ? x - half : x + half;
    const auto pts = u_breakpoints(w, seam);
    return eta * integrate(f, pts, kQuad).value / L;
}

double eta_eff_two_small_width(const WeightFunction& w, double eta) {
    return eta * std::sqrt(std::numbers::pi) * w.sigma() / w.box_length();
}

double eta_eff_two_gaussian(const WeightFunction& w, double eta, double x) {
    return eta_eff_two_small_width(w, eta) * (1.0 + x * x / (2.0 * w.sigma() * w.sigma()));
}

BathFieldII make_bath_field(std::shared_ptr<const DiscreteBathSpec> spec, const TemperatureField& field,
                            double box_length, Eigen::Index n_sites) {
    spec->validate();
    if (n_sites < 1) throw ParameterError(kModule, "need at least one site");
    if (!(box_length > 0.0)) throw ParameterError(kModule, "universe size L must be positive");
    BathFieldII b;
    b.box_length = box_length;
    const double dX = box_length / static_cast<double>(n_sites);
    b.sites = -0.5 * box_length + (Eigen::ArrayXd::LinSpaced(n_sites, 0.0, static_cast<double>(n_sites - 1)) + 0.5) * dX;
    b.temperature = b.sites.unaryExpr([&](double X) { return field.eval(X); });
    b.weight = dX / box_length;
    b.q = Eigen::ArrayXXd::Zero(spec->count(), n_sites);
    b.p = Eigen::ArrayXXd::Zero(spec->count(), n_sites);
    b.spec = std::move(spec);
    return b;
}

void sample_local_equilibrium(BathFieldII& b, const WeightFunction& w, double x0, double v0, double mass,
                              RandomStream& rng) {
    const DiscreteBathSpec& s = *b.spec;
    const Eigen::ArrayXd stiffness = s.mass * s.omega.square();
    Eigen::ArrayXd z(s.count());
    for (Eigen::Index j = 0; j < b.n_sites(); ++j) {
        const double var = b.temperature(j) / b.weight;
        rng.fill_normal(z);
        b.q.col(j) = z * (var / stiffness).sqrt() + s.coupling / stiffness * (x0 * w.g(x0 - b.sites(j)));
        rng.fill_normal(z);
        b.p.col(j) = z * (s.mass * var).sqrt();
    }
    b.x = x0;
    b.mass = mass;
    b.px = mass * v0;
}

VelocityVerletII::VelocityVerletII(const BathFieldII& bath, const WeightFunction& w, const Potential& potential,
                                   double dt)
    : w_(w), potential_(potential), dt_(dt) {
    const DiscreteBathSpec& s = *bath.spec;
    if (!(dt > 0.0)) throw ParameterError(kModule, "dt must be positive");
    if (dt >= 0.1 / s.max_frequency())
        throw ParameterError(kModule, "dt must be below 0.1/max(omega_k) = " + std::to_string(0.1 / s.max_frequency()));
    sites_ = bath.sites;
    c_ = s.coupling;
    stiffness_ = s.mass * s.omega.square();
    inv_m_ = s.mass.inverse();
    counterterm_ = counterterm_stiffness(s);
    weight_ = bath.weight;
    G_.resize(sites_.size());
    F_.resize(sites_.size());
}

void VelocityVerletII::site_weights(double x, Eigen::ArrayXd& G, Eigen::ArrayXd& F) const {
    for (Eigen::Index j = 0; j < sites_.size(); ++j) {
        const double u = x - sites_(j);
        G(j) = w_.g(u);
        F(j) = G(j) + x * w_.dg(u);
    }
}

double VelocityVerletII::force_from(const BathFieldII& b, const Eigen::ArrayXd& G, const Eigen::ArrayXd& F) const {
    const Eigen::ArrayXd S = (b.q.matrix().transpose() * c_.matrix()).array();
    return -potential_.derivative(b.x) + weight_ * (F * (S - counterterm_ * b.x * G)).sum();
}

double VelocityVerletII::particle_force(const BathFieldII& b) const {
    Eigen::ArrayXd G(sites_.size()), F(sites_.size());
    site_weights(b.x, G, F);
    return force_from(b, G, F);
}

void VelocityVerletII::step(BathFieldII& b) {
    const double h = 0.5 * dt_;
    site_weights(b.x, G_, F_);
    b.px += h * force_from(b, G_, F_);
    const Eigen::ArrayXd drive_old = b.x * G_;
    b.x += dt_ * b.px / b.mass;
    site_weights(b.x, G_, F_);
    const Eigen::ArrayXd drive_new = b.x * G_;

    for (Eigen::Index j = 0; j < b.n_sites(); ++j) {
        auto q = b.q.col(j);
        auto p = b.p.col(j);
        p += h * (c_ * drive_old(j) - stiffness_ * q);
        q += dt_ * inv_m_ * p;
        p += h * (c_ * drive_new(j) - stiffness_ * q);
    }
    b.px += h * force_from(b, G_, F_);
    ++steps_;
    if (!std::isfinite(b.x) || !std::isfinite(b.px))
        throw CorruptedStateError(kModule, "non-finite particle state", steps_);
}

void VelocityVerletII::run(BathFieldII& b, long n_steps) {
    for (long i = 0; i < n_steps; ++i) step(b);
}

double VelocityVerletII::energy(const BathFieldII& b) const {
    double bath = 0.0;
    for (Eigen::Index j = 0; j < b.n_sites(); ++j) {
        const double G = w_.g(b.x - sites_(j));
        const Eigen::ArrayXd disp = b.q.col(j) - c_ / stiffness_ * (b.x * G);
        bath += (0.5 * inv_m_ * b.p.col(j).square() + 0.5 * stiffness_ * disp.square()).sum();
    }
    return 0.5 * b.px * b.px / b.mass + potential_.value(b.x) + weight_ * bath;
}

ForceRecord measure_clamped_force_II(const DiscreteBathSpec& spec, const WeightFunction& w,
                                     const TemperatureField& field, const Potential& potential,
                                     Eigen::Index n_sites, double x_clamp, const MicroRunOptions& opts) {
    require_before_recurrence(spec, opts.t_final, kModule);
    if (opts.n_realizations < 1) throw ParameterError(kModule, "need at least one realization");
    if (!(opts.dt > 0.0)) throw ParameterError(kModule, "sample interval must be positive");

    auto shared = std::make_shared<const DiscreteBathSpec>(spec);
    const BathFieldII layout = make_bath_field(shared, field, w.box_length(), n_sites);

    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < n_sites; ++j)
        if (std::abs(w.wrap(x_clamp - layout.sites(j))) <= w.support_radius()) active.push_back(j);

    // Weighted site factors w_j F_j and the per-site standard deviation of
    // Q_k and p_k/(m w), both sqrt(T_j / (w_j m w^2)).
    const Eigen::ArrayXd stiffness = spec.mass * spec.omega.square();
    const Eigen::ArrayXd inv_sqrt_k = stiffness.rsqrt();
    std::vector<double> factor, scale;
    for (Eigen::Index j : active) {
        factor.push_back(layout.weight * weight_F(w, x_clamp, layout.sites(j)));
        scale.push_back(std::sqrt(layout.temperature(j) / layout.weight));
    }

    const Eigen::Index n_t = sample_count(opts.t_final, opts.dt);
    const Eigen::ArrayXd cs = (spec.omega * opts.dt).cos();
    const Eigen::ArrayXd sn = (spec.omega * opts.dt).sin();
    const double static_force = -potential.derivative(x_clamp);

    ForceRecord rec;
    rec.times = Eigen::ArrayXd::LinSpaced(n_t, 0.0, opts.dt * static_cast<double>(n_t - 1));
    rec.force.resize(static_cast<Eigen::Index>(opts.n_realizations), n_t);

    parallel_for(opts.n_realizations, opts.threads, [&](std::size_t r) {
        RandomStream rng(opts.seed, StreamFamily::micro_two, r);
        const Eigen::Index n = spec.count();
        Eigen::ArrayXd A = Eigen::ArrayXd::Zero(n), B = Eigen::ArrayXd::Zero(n), z(n);
        for (std::size_t a = 0; a < active.size(); ++a) {
            rng.fill_normal(z);
            A += factor[a] * scale[a] * z * inv_sqrt_k;
            rng.fill_normal(z);
            B += factor[a] * scale[a] * z * inv_sqrt_k;
        }
        const auto row = static_cast<Eigen::Index>(r);
        for (Eigen::Index j = 0; j < n_t; ++j) {
            if (j > 0) {
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double a = A(k), b = B(k);
                    A(k) = a * cs(k) + b * sn(k);
                    B(k) = b * cs(k) - a * sn(k);
                }
            }
            const double f = static_force + (spec.coupling * A).sum();
            if (!std::isfinite(f)) throw CorruptedStateError(kModule, "non-finite clamped force", j);
            rec.force(row, j) = f;
        }
    });
    return rec;
}

TrajectoryRecord simulate_micro_two(const DiscreteBathSpec& spec, const WeightFunction& w,
                                    const TemperatureField& field, const Potential& potential,
                                    Eigen::Index n_sites, double mass, double x0, double v0,
                                    const MicroRunOptions& opts) {
    require_before_recurrence(spec, opts.t_final, kModule);
    if (opts.n_realizations < 1) throw ParameterError(kModule, "need at least one realization");
    if (opts.sample_every < 1) throw ParameterError(kModule, "sample_every must be at least 1");

    auto shared = std::make_shared<const DiscreteBathSpec>(spec);
    const BathFieldII layout = make_bath_field(shared, field, w.box_length(), n_sites);
    const long n_steps = static_cast<long>(std::llround(opts.t_final / opts.dt));
    const Eigen::Index n_t = n_steps / opts.sample_every + 1;
    const auto R = static_cast<Eigen::Index>(opts.n_realizations);

    TrajectoryRecord rec;
    rec.times = Eigen::ArrayXd::LinSpaced(n_t, 0.0, opts.dt * static_cast<double>(opts.sample_every * (n_t - 1)));
    rec.position.resize(R, n_t);
    rec.velocity.resize(R, n_t);
    rec.force.resize(R, n_t);

    parallel_for(opts.n_realizations, opts.threads, [&](std::size_t r) {
        RandomStream rng(opts.seed, StreamFamily::micro_two, r);
        BathFieldII b = layout;
        sample_local_equilibrium(b, w, x0, v0, mass, rng);
        VelocityVerletII vv(b, w, potential, opts.dt);
        const auto row = static_cast<Eigen::Index>(r);
        for (Eigen::Index j = 0; j < n_t; ++j) {
            if (j > 0) vv.run(b, opts.sample_every);
            rec.position(row, j) = b.x;
            rec.velocity(row, j) = b.velocity();
            rec.force(row, j) = vv.particle_force(b);
        }
    });
    return rec;
}

EffectiveCoefficientsII measure_effective_coefficients_II(const DiscreteBathSpec& spec, const WeightFunction& w,
                                                          const TemperatureField& field,
                                                          const CoefficientProtocolII& pr) {
    const Potential none;
    EffectiveCoefficientsII out;

    const ForceRecord clamped = measure_clamped_force_II(spec, w, field, none, pr.n_sites, pr.x_clamp, pr.clamped);
    const ForceStatistics stats = force_statistics(clamped.force, pr.clamped.dt, pr.correlation_window);
    out.mean_force = stats.mean;
    out.mean_force_stderr = stats.mean_stderr;
    out.noise_correlation = stats.covariance;
    out.lag_dt = stats.lag_dt;
    out.noise_integral = stats.integral;

    const TemperatureField uniform = TemperatureField::constant(pr.kick_temperature, field.domain());
    const DiscreteBathSpec& kick_spec = pr.kick_spec ? *pr.kick_spec : spec;
    const Eigen::Index kick_sites = pr.kick_sites > 0 ? pr.kick_sites : pr.n_sites;
    const TrajectoryRecord kick =
        simulate_micro_two(kick_spec, w, uniform, none, kick_sites, pr.mass, pr.x_clamp, pr.kick_velocity, pr.kick);
    const Eigen::ArrayXd mean_v = kick.velocity.colwise().mean().transpose();
    const FitResult rate = fit_relaxation_rate(kick.times, mean_v, pr.fit_lo, pr.fit_hi);
    out.eta_hat = rate;
    out.eta_hat.estimate = pr.mass * rate.estimate;
    out.eta_hat.standard_error = pr.mass * rate.standard_error;
    return out;
}

} // namespace thermobath
