// microscopic_two.hpp — Spatial field of local oscillator baths coupled through g(x - X)
//
//   G(x, X) = g(x - X),   F(x, X) = g(x - X) + x g'(x - X)
//   eta_eff(x) = eta (1/L) int F^2 dX,   D_eff(x) = eta (1/L) int F^2 T(X) dX

#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Core>

#include "thermobath/interpolation.hpp"
#include "thermobath/microscopic_one.hpp"
#include "thermobath/potential.hpp"
#include "thermobath/quadrature.hpp"
#include "thermobath/spectral.hpp"
#include "thermobath/temperature_field.hpp"

namespace thermobath {

enum class WeightKind { gaussian, box, tabulated };

// g(u) on the periodic universe [-L/2, L/2); arguments are wrapped to the
// nearest image before evaluation.
class WeightFunction {
public:
    // g(u) = exp(-u^2 / (2 sigma^2))
    static WeightFunction gaussian(double sigma, double box_length);
    // g(u) = height for |u| < width/2; g' = 0. A single-site coupling.
    static WeightFunction box(double width, double height, double box_length);
    // Monotone cubic through (u, g) samples, zero outside the table.
    static WeightFunction tabulated(Eigen::ArrayXd u, Eigen::ArrayXd g, double box_length);

    double wrap(double u) const;
    double g(double u) const;
    double dg(double u) const;

    WeightKind kind() const { return kind_; }
    double sigma() const { return sigma_; }
    double box_length() const { return L_; }
    // |u| beyond which g is negligible or zero.
    double support_radius() const;

private:
    WeightFunction() = default;

    WeightKind kind_{WeightKind::gaussian};
    double sigma_{1.0};
    double height_{1.0};
    double L_{1.0};
    MonotoneCubic table_;
};

double weight_G(const WeightFunction& w, double x, double X);
double weight_F(const WeightFunction& w, double x, double X);

// eta (1/L) int_{-L/2}^{L/2} F(x, X)^2 dX by adaptive quadrature.
double eta_eff_two(const WeightFunction& w, double eta, double x);
// eta (1/L) int F(x, X)^2 T(X) dX; the field must cover the box.
double d_eff_two(const WeightFunction& w, double eta, const TemperatureField& field, double x);

// eta sqrt(pi) sigma / L: the narrow-width value, exact at x = 0.
double eta_eff_two_small_width(const WeightFunction& w, double eta);
// Whole-line gaussian integral: eta sqrt(pi) sigma/L (1 + x^2/(2 sigma^2)).
double eta_eff_two_gaussian(const WeightFunction& w, double eta, double x);

// Sites X_j = -L/2 + (j + 1/2) dX carry identical oscillator sets. Site
// sums stand for (1/L) int dX with weights w_j = dX/L; independent site
// initial conditions with variance scaled by 1/w_j realize delta(X - X').
// Oscillator arrays are N x M_X, one column per site.
struct BathFieldII {
    std::shared_ptr<const DiscreteBathSpec> spec;
    double box_length{1.0};
    Eigen::ArrayXd sites;
    Eigen::ArrayXd temperature;
    double weight{0.0};
    Eigen::ArrayXXd q;
    Eigen::ArrayXXd p;
    double x{0.0};
    double px{0.0};
    double mass{1.0};

    Eigen::Index n_sites() const { return sites.size(); }
    double velocity() const { return px / mass; }
};

BathFieldII make_bath_field(std::shared_ptr<const DiscreteBathSpec> spec, const TemperatureField& field,
                            double box_length, Eigen::Index n_sites);

// Local equilibrium about the particle at x0: Q ~ N(0, T_j/(w_j m w^2)),
// p ~ N(0, m T_j / w_j).
void sample_local_equilibrium(BathFieldII& bath, const WeightFunction& w, double x0, double v0, double mass,
                              RandomStream& rng);

class VelocityVerletII {
public:
    VelocityVerletII(const BathFieldII& bath, const WeightFunction& w, const Potential& potential, double dt);

    void step(BathFieldII& bath);
    void run(BathFieldII& bath, long n_steps);
    double particle_force(const BathFieldII& bath) const;
    // p^2/2M + V + sum_j w_j sum_k [p^2/2m + (m w^2/2)(q - c x G_j/(m w^2))^2]
    double energy(const BathFieldII& bath) const;
    long steps_taken() const { return steps_; }

private:
    void site_weights(double x, Eigen::ArrayXd& G, Eigen::ArrayXd& F) const;
    double force_from(const BathFieldII& bath, const Eigen::ArrayXd& G, const Eigen::ArrayXd& F) const;

    const WeightFunction& w_;
    const Potential& potential_;
    double dt_;
    Eigen::ArrayXd sites_;
    Eigen::ArrayXd c_;
    Eigen::ArrayXd stiffness_;
    Eigen::ArrayXd inv_m_;
    double counterterm_;
    double weight_;
    Eigen::ArrayXd G_;
    Eigen::ArrayXd F_;
    long steps_{0};
};

// Clamped particle at x_clamp. All sites share the oscillator frequencies and
// the bath is linear at fixed x, so each realization's site oscillators are
// sampled individually and then folded into one weighted amplitude pair per
// frequency before exact propagation. Sites where F vanishes (beyond 12 sigma
// for a gaussian) do not contribute and are skipped.
ForceRecord measure_clamped_force_II(const DiscreteBathSpec& spec, const WeightFunction& w,
                                     const TemperatureField& field, const Potential& potential,
                                     Eigen::Index n_sites, double x_clamp, const MicroRunOptions& opts);

TrajectoryRecord simulate_micro_two(const DiscreteBathSpec& spec, const WeightFunction& w,
                                    const TemperatureField& field, const Potential& potential,
                                    Eigen::Index n_sites, double mass, double x0, double v0,
                                    const MicroRunOptions& opts);

struct EffectiveCoefficientsII {
    FitResult eta_hat;
    double mean_force{0.0};
    double mean_force_stderr{0.0};
    Eigen::ArrayXd noise_correlation;
    double lag_dt{0.0};
    double noise_integral{0.0}; // estimates 2 D_eff(x_clamp)
};

struct CoefficientProtocolII {
    Eigen::Index n_sites{128};
    double x_clamp{0.0};
    MicroRunOptions clamped;
    double correlation_window{0.6};
    double mass{1.0};
    double kick_velocity{0.1};
    double kick_temperature{1e-6}; // uniform bath for the friction run
    Eigen::Index kick_sites{0};    // 0: same as n_sites
    const DiscreteBathSpec* kick_spec{nullptr}; // nullptr: same oscillator set
    MicroRunOptions kick;
    double fit_lo{0.05};
    double fit_hi{1.5};
};

EffectiveCoefficientsII measure_effective_coefficients_II(const DiscreteBathSpec& spec, const WeightFunction& w,
                                                          const TemperatureField& field,
                                                          const CoefficientProtocolII& protocol);

} // namespace thermobath
