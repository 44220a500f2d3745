// microscopic_one.hpp — Explicit oscillator bath with a temperature-gradient drive
//
//   M x''     = -V'(x) + sum_k c_k q_k - (sum_k c_k^2/(m_k w_k^2)) x
//   m_k q_k'' = -m_k w_k^2 q_k + c_k x - alpha_k T'(x),   alpha_k = alpha_tilde c_k

#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Core>

#include "thermobath/analysis.hpp"
#include "thermobath/potential.hpp"
#include "thermobath/rng.hpp"
#include "thermobath/spectral.hpp"
#include "thermobath/temperature_field.hpp"

namespace thermobath {

struct BathStateI {
    std::shared_ptr<const DiscreteBathSpec> spec;
    Eigen::ArrayXd q;
    Eigen::ArrayXd p;
    double x{0.0};
    double px{0.0}; // particle momentum
    double mass{1.0};
    double alpha_tilde{0.0};

    double velocity() const { return px / mass; }
    void check_finite(long step) const;
};

// Oscillators in displaced equilibrium about x0 at temperature T (T = 0
// allowed): q = q~ + (c/(m w^2)) [x0 - alpha_tilde T'(x0)], q~ ~ N(0, T/(m w^2)),
// p ~ N(0, m T). The particle starts at x0 with velocity v0.
BathStateI sample_initial_bath(std::shared_ptr<const DiscreteBathSpec> spec, double alpha_tilde,
                               double temperature, double temperature_gradient, double x0,
                               RandomStream& rng, double mass = 1.0, double v0 = 0.0);

BathStateI sample_initial_bath(std::shared_ptr<const DiscreteBathSpec> spec, double alpha_tilde,
                               const TemperatureField& field, double x0, std::uint64_t seed,
                               double mass = 1.0, double v0 = 0.0);

// Velocity Verlet for particle plus bath. Holds precomputed per-mode
// constants; one integrator serves any state built on the same spec.
class VelocityVerletI {
public:
    VelocityVerletI(const DiscreteBathSpec& spec, const TemperatureField& field, const Potential& potential,
                    double dt, double particle_mass);

    void step(BathStateI& state);
    void run(BathStateI& state, long n_steps);

    // Total force on the particle at the current state.
    double particle_force(const BathStateI& state) const;

    // p^2/2M + V + sum [p_k^2/2m_k + (m_k w_k^2/2)(q_k - c_k x/(m_k w_k^2))^2]
    double hamiltonian(const BathStateI& state) const;
    // hamiltonian() + alpha_tilde T'(x) sum c_k q_k; conserved when T'' = 0.
    double total_energy(const BathStateI& state) const;

    // Work done on the bath by the drive, sum_k int f_ext,k dq_k.
    double external_work() const { return work_; }
    long steps_taken() const { return steps_; }
    double dt() const { return dt_; }

private:
    double drive_center(const BathStateI& s, double x) const;

    const TemperatureField& field_;
    const Potential& potential_;
    double dt_;
    double mass_;
    Eigen::ArrayXd c_;
    Eigen::ArrayXd stiffness_; // m w^2
    Eigen::ArrayXd inv_m_;
    double counterterm_;
    double work_{0.0};
    long steps_{0};
};

// One velocity-Verlet step; convenience wrapper around VelocityVerletI.
void step(BathStateI& state, const TemperatureField& field, const Potential& potential, double dt);

// Particle held at x_clamp. The bath is linear at fixed x, so each mode is
// advanced by an exact rotation about its driven centre and any sample
// interval is allowed.
class ClampedPropagatorI {
public:
    ClampedPropagatorI(const DiscreteBathSpec& spec, const TemperatureField& field, const Potential& potential,
                       double x_clamp, double alpha_tilde, double sample_dt);

    void advance(BathStateI& state) const;
    double force(const BathStateI& state) const;

private:
    Eigen::ArrayXd c_;
    Eigen::ArrayXd center_;
    Eigen::ArrayXd cos_;
    Eigen::ArrayXd sin_;
    Eigen::ArrayXd m_omega_;
    double static_force_;
};

struct MicroRunOptions {
    std::size_t n_realizations{1000};
    double dt{0.0};          // integrator step (free runs) or sample interval (clamped)
    double t_final{1.0};
    long sample_every{1};    // free runs: keep every n-th step
    std::uint64_t seed{1};
    unsigned threads{0};
};

// Force samples, rows = realizations, columns = sample times.
struct ForceRecord {
    Eigen::ArrayXd times;
    Eigen::ArrayXXd force;
};

// Free-particle trajectories with the force on the particle at each sample.
struct TrajectoryRecord {
    Eigen::ArrayXd times;
    Eigen::ArrayXXd position;
    Eigen::ArrayXXd velocity;
    Eigen::ArrayXXd force;
};

ForceRecord measure_clamped_force_I(const DiscreteBathSpec& spec, double alpha_tilde, const TemperatureField& field,
                                    const Potential& potential, double x_clamp, const MicroRunOptions& opts);

TrajectoryRecord simulate_micro_one(const DiscreteBathSpec& spec, double alpha_tilde, const TemperatureField& field,
                                    const Potential& potential, double mass, double x0, double v0,
                                    const MicroRunOptions& opts);

struct EffectiveCoefficientsI {
    FitResult eta_hat;           // mass times the fitted velocity relaxation rate
    FitResult kappa_hat;         // -<F>_clamped / T'(x_clamp)
    double mean_force{0.0};
    double mean_force_stderr{0.0};
    Eigen::ArrayXd noise_correlation; // clamped-force autocovariance per lag
    double lag_dt{0.0};
    double noise_integral{0.0};  // estimates 2 eta T0
};

struct CoefficientProtocol {
    double x_clamp{0.0};
    MicroRunOptions clamped;     // dt = sample interval
    double correlation_window{0.6}; // one-sided lag window for the noise integral
    double mass{1.0};
    double kick_velocity{1.0};
    MicroRunOptions kick;
    double fit_lo{0.05};
    double fit_hi{1.5};
};

// Clamped run in the given field for kappa and the noise; kick run in a
// uniform bath at T(x_clamp) for the friction.
EffectiveCoefficientsI measure_effective_coefficients(const DiscreteBathSpec& spec, double alpha_tilde,
                                                      const TemperatureField& field,
                                                      const CoefficientProtocol& protocol);

// Guard against bath rephasing: throws ParameterError when t_final reaches
// the recurrence time of the discrete bath.
void require_before_recurrence(const DiscreteBathSpec& spec, double t_final, const char* module);

} // namespace thermobath
