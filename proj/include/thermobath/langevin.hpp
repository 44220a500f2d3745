// langevin.hpp — Effective stochastic dynamics for both models
//
// Model I (underdamped):  M x'' = -V' - eta_eff(x) x' - kappa T'(x) + F_L,
//                         <F_L F_L'> = 2 eta T0 delta,  eta_eff = eta (1 - alpha_tilde T'').
// Model I (overdamped):   dx = -(V' + kappa T')/eta_eff dt + sqrt(2 eta T0/eta_eff^2) dW
// Model II (overdamped):  dx = -V'/eta_eff dt + sqrt(2 D(x)) dW,  D = D_eff/eta_eff^2
// All stochastic integrals are Ito.

#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "thermobath/fokker_planck.hpp"
#include "thermobath/interpolation.hpp"
#include "thermobath/microscopic_two.hpp"
#include "thermobath/potential.hpp"
#include "thermobath/rng.hpp"
#include "thermobath/temperature_field.hpp"

namespace thermobath {

enum class LangevinModel { underdamped1, overdamped1, overdamped2 };

std::string to_string(LangevinModel model);
LangevinModel langevin_model_from_string(const std::string& name);

struct EffectiveParamsI {
    explicit EffectiveParamsI(TemperatureField f) : field(std::move(f)) {}

    double mass{1.0};
    double eta{1.0};
    double alpha_tilde{0.0};
    double kappa{0.0};
    TemperatureField field;
    Potential potential;
    double box_length{1.0};

    // Noise temperature T0 = T at the field's reference position (clamped
    // into the box).
    double noise_temperature() const;
    double eta_eff(double x) const { return eta * (1.0 - alpha_tilde * field.curv(x)); }
    // Throws ModelValidityError if eta_eff <= 0 on a probe grid over the box.
    void validate() const;
};

// How D(x) is formed for model II.
//   exact:                   D_eff(x) / eta_eff(x)^2 by quadrature
//   local:                   T(x) / eta_eff(x)
//   local_constant_friction: T(x) / eta_eff(x_ref), spatial variation of eta_eff neglected
enum class DiffusionMode { exact, local, local_constant_friction };

std::string to_string(DiffusionMode mode);
DiffusionMode diffusion_mode_from_string(const std::string& name);

struct EffectiveParamsII {
    EffectiveParamsII(WeightFunction w, TemperatureField f) : weight(std::move(w)), field(std::move(f)) {}

    WeightFunction weight;
    double eta{1.0};
    TemperatureField field;
    Potential potential;
    double box_length{1.0};
    DiffusionMode mode{DiffusionMode::exact};
    double friction_reference{0.0}; // x_ref for local_constant_friction
};

// eta_eff(x) and D(x) tabulated on a uniform grid over the box and
// interpolated by monotone cubic; quadrature per step would dominate.
class ModelIICoefficients {
public:
    explicit ModelIICoefficients(const EffectiveParamsII& params, Eigen::Index grid_points = 1024);

    double eta_eff(double x) const { return eta_.value(x); }
    double diffusion(double x) const { return diffusion_.value(x); }
    double drift(double x) const {
        if (params_.potential.kind() == PotentialKind::none) return 0.0;
        return -params_.potential.derivative(x) / eta_eff(x);
    }
    const EffectiveParamsII& params() const { return params_; }

private:
    EffectiveParamsII params_;
    MonotoneCubic eta_;
    MonotoneCubic diffusion_;
};

struct ParticleState {
    double x{0.0};
    double v{0.0};
};

// BAOAB splitting; the O step is the exact Ornstein-Uhlenbeck update with
// eta_eff frozen at the midpoint position.
void step_underdamped_I(ParticleState& s, const EffectiveParamsI& params, double dt, double xi);
// Euler-Maruyama.
void step_overdamped_I(ParticleState& s, const EffectiveParamsI& params, double dt, double xi);
void step_overdamped_II(ParticleState& s, const ModelIICoefficients& coeffs, double dt, double xi);

// Reflecting walls at +-L/2 by coordinate folding; returns true when the
// number of reflections is odd (velocity must flip).
bool fold_into_box(double& x, double box_length);

struct TrajectoryEnsemble {
    LangevinModel model{LangevinModel::overdamped1};
    std::uint64_t seed{0};
    double box_length{1.0};
    Eigen::ArrayXd times;
    Eigen::ArrayXXd positions;  // trajectories x samples
    Eigen::ArrayXXd velocities; // empty for overdamped runs

    Eigen::Index n_traj() const { return positions.rows(); }
};

enum class InitialPlacement { point, uniform };

struct EnsembleOptions {
    std::size_t n_traj{1000};
    double dt{0.01};
    double t_final{1.0};
    double record_interval{0.0}; // 0: t_final (initial and final samples only)
    InitialPlacement placement{InitialPlacement::point};
    double x0{0.0};
    std::uint64_t seed{1};
    unsigned threads{0};
};

TrajectoryEnsemble run_ensemble(const EffectiveParamsI& params, LangevinModel model, const EnsembleOptions& opts);
TrajectoryEnsemble run_ensemble(const ModelIICoefficients& coeffs, const EnsembleOptions& opts);

// Drift/diffusion pairs of the matching Fokker-Planck equations. The
// returned functions refer to the argument, which must outlive them.
DriftDiffusion fpe_coefficients(const EffectiveParamsI& params);
DriftDiffusion fpe_coefficients(const ModelIICoefficients& coeffs);

} // namespace thermobath
