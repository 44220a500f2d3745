// fokker_planck.cpp — Finite-volume Fokker-Planck solver and stationary densities

#include "thermobath/fokker_planck.hpp"

#include <cmath>

#include "thermobath/errors.hpp"
#include "thermobath/langevin.hpp"

namespace thermobath {
namespace {
constexpr const char* kModule = "fokker_planck";

// Bernoulli function z/(e^z - 1), series near 0.
double bernoulli(double z) {
    if (std::abs(z) < 1e-6) return 1.0 - 0.5 * z + z * z / 12.0;
    return z / std::expm1(z);
}

struct Tabulated {
    Eigen::ArrayXd a_face; // interior faces j + 1/2, j = 0..n-2
    Eigen::ArrayXd a_cell;
    Eigen::ArrayXd D;
    Eigen::ArrayXd dphi;   // trapezoid of a/D between neighbouring centres
};

Tabulated tabulate(const DriftDiffusion& c, const Grid& g) {
    const Eigen::ArrayXd x = g.centers();
    Tabulated t;
    t.D = x.unaryExpr(c.diffusion);
    if (!(t.D > 0.0).all()) throw ParameterError(kModule, "diffusion must be positive on the grid");
    t.a_cell = x.unaryExpr(c.drift);
    const Eigen::Index n = g.n;
    t.a_face.resize(std::max<Eigen::Index>(n - 1, 0));
    t.dphi.resize(std::max<Eigen::Index>(n - 1, 0));
    const Eigen::ArrayXd ratio = t.a_cell / t.D;
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        t.a_face(j) = c.drift(g.lo + static_cast<double>(j + 1) * g.dx());
        t.dphi(j) = 0.5 * (ratio(j) + ratio(j + 1)) * g.dx();
    }
    return t;
}

void fluxes(const Tabulated& t, const Eigen::ArrayXd& P, double dx, FluxScheme scheme, Eigen::ArrayXd& F) {
    const Eigen::Index n = P.size();
    F.setZero(n + 1);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const double u0 = t.D(j) * P(j), u1 = t.D(j + 1) * P(j + 1);
        if (scheme == FluxScheme::upwind) {
            const double a = t.a_face(j);
            F(j + 1) = (a > 0.0 ? a * P(j) : a * P(j + 1)) - (u1 - u0) / dx;
        } else {
            F(j + 1) = (bernoulli(-t.dphi(j)) * u0 - bernoulli(t.dphi(j)) * u1) / dx;
        }
    }
}

// Largest per-cell outflow rate; explicit Euler keeps P >= 0 when dt times it is <= 1.
double outflow_rate(const Tabulated& t, double dx, FluxScheme scheme) {
    const Eigen::Index n = t.D.size();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double r = 0.0;
        if (j + 1 < n) {
            r += scheme == FluxScheme::upwind ? std::max(t.a_face(j), 0.0) / dx + t.D(j) / (dx * dx)
                                              : bernoulli(-t.dphi(j)) * t.D(j) / (dx * dx);
        }
        if (j > 0) {
            r += scheme == FluxScheme::upwind ? std::max(-t.a_face(j - 1), 0.0) / dx + t.D(j) / (dx * dx)
                                              : bernoulli(t.dphi(j - 1)) * t.D(j) / (dx * dx);
        }
        worst = std::max(worst, r);
    }
    return worst;
}
} // namespace

Eigen::ArrayXd Grid::centers() const {
    return lo + (Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)) + 0.5) * dx();
}

Eigen::ArrayXd Grid::faces() const { return lo + Eigen::ArrayXd::LinSpaced(n + 1, 0.0, static_cast<double>(n)) * dx(); }

bool Grid::same_as(const Grid& o) const {
    const double tol = 1e-12 * std::max(1.0, hi - lo);
    return n == o.n && std::abs(lo - o.lo) <= tol && std::abs(hi - o.hi) <= tol;
}

void DensityProfile::normalize() {
    const double m = total_mass();
    if (!(m > 0.0)) throw ParameterError(kModule, "cannot normalize a density with zero mass");
    P /= m;
}

DensityProfile uniform_density(const Grid& grid) {
    return {grid, Eigen::ArrayXd::Constant(grid.n, 1.0 / (grid.hi - grid.lo)), "uniform"};
}

DensityProfile gaussian_density(const Grid& grid, double x0, double width) {
    if (!(width > 0.0)) throw ParameterError(kModule, "gaussian width must be positive");
    const Eigen::ArrayXd f = grid.faces();
    auto cdf = [&](double x) { return 0.5 * std::erfc(-(x - x0) / (width * std::sqrt(2.0))); };
    DensityProfile d{grid, Eigen::ArrayXd(grid.n), "gaussian"};
    for (Eigen::Index j = 0; j < grid.n; ++j) d.P(j) = (cdf(f(j + 1)) - cdf(f(j))) / grid.dx();
    d.normalize();
    return d;
}

DensityProfile rebin(const DensityProfile& fine, Eigen::Index n_coarse) {
    if (n_coarse < 1 || fine.grid.n % n_coarse != 0)
        throw ParameterError(kModule, "coarse cell count must divide the fine one");
    const Eigen::Index k = fine.grid.n / n_coarse;
    DensityProfile d{{fine.grid.lo, fine.grid.hi, n_coarse}, Eigen::ArrayXd(n_coarse), fine.model};
    for (Eigen::Index j = 0; j < n_coarse; ++j) d.P(j) = fine.P.segment(j * k, k).mean();
    return d;
}

Eigen::ArrayXd face_fluxes(const DriftDiffusion& coeffs, const DensityProfile& density, FluxScheme scheme) {
    const Tabulated t = tabulate(coeffs, density.grid);
    Eigen::ArrayXd F;
    fluxes(t, density.P, density.grid.dx(), scheme, F);
    return F;
}

double max_stable_dt(const DriftDiffusion& coeffs, const Grid& grid, FluxScheme scheme) {
    const Tabulated t = tabulate(coeffs, grid);
    const double dx = grid.dx();
    return std::min(0.4 * dx * dx / t.D.maxCoeff(), 1.0 / outflow_rate(t, dx, scheme));
}

DensityProfile evolve(const DriftDiffusion& coeffs, const DensityProfile& initial, double dt, double t_final,
                      FluxScheme scheme) {
    if (!(dt > 0.0)) throw ParameterError(kModule, "dt must be positive");
    if (t_final < 0.0) throw ParameterError(kModule, "t_final must be non-negative");
    const Grid& g = initial.grid;
    const double dx = g.dx();
    const Tabulated t = tabulate(coeffs, g);

    const long steps = t_final == 0.0 ? 0 : static_cast<long>(std::ceil(t_final / dt - 1e-9));
    const double h = steps > 0 ? t_final / static_cast<double>(steps) : dt;
    if (h > 0.4 * dx * dx / t.D.maxCoeff())
        throw ParameterError(kModule, "dt " + std::to_string(h) + " exceeds 0.4 dx^2/max D = " +
                                          std::to_string(0.4 * dx * dx / t.D.maxCoeff()));
    if (h * outflow_rate(t, dx, scheme) > 1.0)
        throw ParameterError(kModule, "dt " + std::to_string(h) + " breaks the positivity bound");

    DensityProfile d = initial;
    Eigen::ArrayXd F;
    for (long s = 0; s < steps; ++s) {
        fluxes(t, d.P, dx, scheme, F);
        d.P -= h / dx * (F.tail(g.n) - F.head(g.n));
    }
    return d;
}

DensityProfile steady_state_numeric(const DriftDiffusion& coeffs, const Grid& grid) {
    const Tabulated t = tabulate(coeffs, grid);
    const Eigen::Index n = grid.n;
    Eigen::ArrayXd phi = Eigen::ArrayXd::Zero(n);
    for (Eigen::Index j = 1; j < n; ++j) phi(j) = phi(j - 1) + t.dphi(j - 1);
    phi -= phi(n / 2);
    // Shift by the maximum so the exponential cannot overflow.
    const Eigen::ArrayXd logp = phi - t.D.log();
    DensityProfile d{grid, (logp - logp.maxCoeff()).exp(), "steady-numeric"};
    d.normalize();
    return d;
}

DensityProfile steady_state_I(const EffectiveParamsI& p, const Grid& grid) {
    if (!p.field.has_constant_gradient())
        throw ModelValidityError(kModule, "closed-form steady state needs T'' = 0; use steady_state_numeric");
    if (p.potential.kind() != PotentialKind::none)
        throw ModelValidityError(kModule, "closed-form steady state is for a free particle; use steady_state_numeric");
    const double T0 = p.noise_temperature();
    const double b = p.kappa * p.field.slope() / T0; // log-slope magnitude
    const double L = p.box_length;
    const double A = std::abs(b) < 1e-12 ? L : 2.0 / b * std::sinh(0.5 * b * L);
    DensityProfile d{grid, (-b * grid.centers()).exp() / A, "steady-I"};
    d.normalize();
    return d;
}

Eigen::ArrayXd soret_profile(const TemperatureField& field, const Grid& grid) {
    return grid.centers().unaryExpr([&](double x) { return 1.0 / field.eval(x); });
}

} // namespace thermobath
