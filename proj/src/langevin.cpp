// langevin.cpp — Effective Langevin integrators and ensembles

#include "thermobath/langevin.hpp"

#include <algorithm>
#include <cmath>

#include "thermobath/errors.hpp"
#include "thermobath/parallel.hpp"

namespace thermobath {
namespace {
constexpr const char* kModule = "langevin";
constexpr Eigen::Index kProbe = 1025;

void require_box_inside(const TemperatureField& field, double box_length) {
    if (!(box_length > 0.0)) throw ParameterError(kModule, "box length must be positive");
    const double half = 0.5 * box_length;
    if (field.domain().lo > -half || field.domain().hi < half)
        throw DomainError(kModule, "temperature field domain must contain the box [-L/2, L/2]");
}

double eta_eff_checked(const EffectiveParamsI& p, double x) {
    const double e = p.eta_eff(x);
    if (!(e > 0.0))
        throw ModelValidityError(kModule, "eta_eff = " + std::to_string(e) + " <= 0 at x = " + std::to_string(x));
    return e;
}

void check_state(const ParticleState& s) {
    if (!std::isfinite(s.x) || !std::isfinite(s.v)) throw CorruptedStateError(kModule, "non-finite particle state", 0);
}
} // namespace

std::string to_string(LangevinModel model) {
    switch (model) {
    case LangevinModel::underdamped1: return "underdamped1";
    case LangevinModel::overdamped1: return "overdamped1";
    case LangevinModel::overdamped2: return "overdamped2";
    }
    return "?";
}

LangevinModel langevin_model_from_string(const std::string& name) {
    if (name == "underdamped1") return LangevinModel::underdamped1;
    if (name == "overdamped1") return LangevinModel::overdamped1;
    if (name == "overdamped2") return LangevinModel::overdamped2;
    throw ParameterError(kModule, "unknown model '" + name + "'");
}

std::string to_string(DiffusionMode mode) {
    switch (mode) {
    case DiffusionMode::exact: return "exact";
    case DiffusionMode::local: return "local";
    case DiffusionMode::local_constant_friction: return "local-constant-friction";
    }
    return "?";
}

DiffusionMode diffusion_mode_from_string(const std::string& name) {
    if (name == "exact") return DiffusionMode::exact;
    if (name == "local") return DiffusionMode::local;
    if (name == "local-constant-friction") return DiffusionMode::local_constant_friction;
    throw ParameterError(kModule, "unknown diffusion mode '" + name + "'");
}

double EffectiveParamsI::noise_temperature() const {
    const double half = 0.5 * box_length;
    return field.eval(std::clamp(field.reference_position(), -half, half));
}

void EffectiveParamsI::validate() const {
    if (!(mass > 0.0)) throw ParameterError(kModule, "mass must be positive");
    if (!(eta > 0.0)) throw ParameterError(kModule, "eta must be positive");
    require_box_inside(field, box_length);
    const Eigen::ArrayXd probe = Eigen::ArrayXd::LinSpaced(kProbe, -0.5 * box_length, 0.5 * box_length);
    for (double x : probe) eta_eff_checked(*this, x);
}

ModelIICoefficients::ModelIICoefficients(const EffectiveParamsII& params, Eigen::Index grid_points)
    : params_(params) {
    if (!(params.eta > 0.0)) throw ParameterError(kModule, "eta must be positive");
    if (grid_points < 4) throw ParameterError(kModule, "coefficient grid needs at least 4 points");
    require_box_inside(params.field, params.box_length);
    const double half = 0.5 * params.box_length;
    const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(grid_points, -half, half);
    Eigen::ArrayXd eta(grid_points), D(grid_points);
    const double eta_ref = eta_eff_two(params.weight, params.eta, params.friction_reference);
    for (Eigen::Index i = 0; i < grid_points; ++i) {
        eta(i) = eta_eff_two(params.weight, params.eta, x(i));
        if (!(eta(i) > 0.0)) throw ModelValidityError(kModule, "eta_eff vanishes at x = " + std::to_string(x(i)));
        const double T = params.field.eval(x(i));
        switch (params.mode) {
        case DiffusionMode::exact:
            D(i) = d_eff_two(params.weight, params.eta, params.field, x(i)) / (eta(i) * eta(i));
            break;
        case DiffusionMode::local: D(i) = T / eta(i); break;
        case DiffusionMode::local_constant_friction:
            D(i) = T / eta_ref;
            eta(i) = eta_ref;
            break;
        }
    }
    eta_ = MonotoneCubic(x, eta);
    diffusion_ = MonotoneCubic(x, D);
}

bool fold_into_box(double& x, double box_length) {
    const double half = 0.5 * box_length;
    bool flip = false;
    for (int i = 0; i < 64 && (x > half || x < -half); ++i) {
        x = x > half ? box_length - x : -box_length - x;
        flip = !flip;
    }
    if (x > half || x < -half || !std::isfinite(x))
        throw CorruptedStateError(kModule, "particle escaped the box", 0);
    return flip;
}

void step_underdamped_I(ParticleState& s, const EffectiveParamsI& p, double dt, double xi) {
    const double h = 0.5 * dt;
    auto force = [&](double x) { return -p.potential.derivative(x) - p.kappa * p.field.grad(x); };

    s.v += h * force(s.x) / p.mass;
    s.x += h * s.v;
    if (fold_into_box(s.x, p.box_length)) s.v = -s.v;

    const double e = eta_eff_checked(p, s.x);
    const double decay = std::exp(-e / p.mass * dt);
    const double var = p.eta * p.noise_temperature() / (p.mass * e) * (1.0 - decay * decay);
    s.v = decay * s.v + std::sqrt(var) * xi;

    s.x += h * s.v;
    if (fold_into_box(s.x, p.box_length)) s.v = -s.v;
    s.v += h * force(s.x) / p.mass;
    check_state(s);
}

void step_overdamped_I(ParticleState& s, const EffectiveParamsI& p, double dt, double xi) {
    const double e = eta_eff_checked(p, s.x);
    const double a = -(p.potential.derivative(s.x) + p.kappa * p.field.grad(s.x)) / e;
    const double D = p.eta * p.noise_temperature() / (e * e);
    s.x += a * dt + std::sqrt(2.0 * D * dt) * xi;
    fold_into_box(s.x, p.box_length);
    check_state(s);
}

void step_overdamped_II(ParticleState& s, const ModelIICoefficients& c, double dt, double xi) {
    s.x += c.drift(s.x) * dt + std::sqrt(2.0 * c.diffusion(s.x) * dt) * xi;
    fold_into_box(s.x, c.params().box_length);
    check_state(s);
}

namespace {

struct Schedule {
    long steps_per_record;
    Eigen::Index n_records;
    double dt;
};

Schedule make_schedule(const EnsembleOptions& o) {
    if (o.n_traj < 1) throw ParameterError(kModule, "n_traj must be at least 1");
    if (!(o.dt > 0.0)) throw ParameterError(kModule, "dt must be positive");
    if (o.t_final < 0.0) throw ParameterError(kModule, "t_final must be non-negative");
    if (o.t_final == 0.0) return {0, 0, o.dt};
    const double interval = o.record_interval > 0.0 ? std::min(o.record_interval, o.t_final) : o.t_final;
    const auto n_records = static_cast<Eigen::Index>(std::llround(o.t_final / interval));
    const long per = std::max(1L, static_cast<long>(std::llround(interval / o.dt)));
    return {per, n_records, o.dt};
}

template <class Init, class Step>
TrajectoryEnsemble run_generic(LangevinModel model, double box_length, bool keep_velocity, const EnsembleOptions& o,
                               Init&& init, Step&& step) {
    const Schedule sch = make_schedule(o);
    const auto n = static_cast<Eigen::Index>(o.n_traj);
    const Eigen::Index cols = sch.n_records + 1;

    TrajectoryEnsemble ens;
    ens.model = model;
    ens.seed = o.seed;
    ens.box_length = box_length;
    ens.times = Eigen::ArrayXd::LinSpaced(cols, 0.0, sch.dt * static_cast<double>(sch.steps_per_record * sch.n_records));
    ens.positions.resize(n, cols);
    if (keep_velocity) ens.velocities.resize(n, cols);

    parallel_for(o.n_traj, o.threads, [&](std::size_t i) {
        RandomStream rng(o.seed, StreamFamily::langevin, i);
        const auto row = static_cast<Eigen::Index>(i);
        ParticleState s;
        s.x = o.placement == InitialPlacement::uniform ? (rng.uniform() - 0.5) * box_length : o.x0;
        init(s, rng);
        try {
            for (Eigen::Index j = 0; j < cols; ++j) {
                if (j > 0)
                    for (long k = 0; k < sch.steps_per_record; ++k) step(s, rng.normal());
                ens.positions(row, j) = s.x;
                if (keep_velocity) ens.velocities(row, j) = s.v;
            }
        } catch (const ModelValidityError& e) {
            throw ModelValidityError(kModule, std::string(e.what()) + " (trajectory " + std::to_string(i) + ")");
        } catch (const CorruptedStateError& e) {
            throw CorruptedStateError(kModule, std::string(e.what()) + " (trajectory " + std::to_string(i) + ")", 0);
        }
    });
    return ens;
}

} // namespace

TrajectoryEnsemble run_ensemble(const EffectiveParamsI& p, LangevinModel model, const EnsembleOptions& o) {
    p.validate();
    const double half = 0.5 * p.box_length;
    if (o.placement == InitialPlacement::point && (o.x0 < -half || o.x0 > half))
        throw ParameterError(kModule, "x0 outside the box");
    const double dt = o.dt;
    const Eigen::ArrayXd probe = Eigen::ArrayXd::LinSpaced(kProbe, -half, half);
    const double max_eta = probe.unaryExpr([&](double x) { return p.eta_eff(x); }).maxCoeff();

    switch (model) {
    case LangevinModel::underdamped1: {
        if (dt * max_eta / p.mass >= 0.1) throw ParameterError(kModule, "underdamped step needs dt eta_eff/M < 0.1");
        if (p.potential.kind() == PotentialKind::harmonic && dt * std::sqrt(p.potential.stiffness() / p.mass) >= 0.1)
            throw ParameterError(kModule, "underdamped step needs dt omega0 < 0.1");
        const double vth = std::sqrt(p.noise_temperature() / p.mass);
        return run_generic(
            model, p.box_length, true, o, [&](ParticleState& s, RandomStream& rng) { s.v = vth * rng.normal(); },
            [&](ParticleState& s, double xi) { step_underdamped_I(s, p, dt, xi); });
    }
    case LangevinModel::overdamped1:
        return run_generic(
            model, p.box_length, false, o, [](ParticleState&, RandomStream&) {},
            [&](ParticleState& s, double xi) { step_overdamped_I(s, p, dt, xi); });
    case LangevinModel::overdamped2: break;
    }
    throw ParameterError(kModule, "model overdamped2 needs ModelIICoefficients");
}

TrajectoryEnsemble run_ensemble(const ModelIICoefficients& c, const EnsembleOptions& o) {
    const double half = 0.5 * c.params().box_length;
    if (o.placement == InitialPlacement::point && (o.x0 < -half || o.x0 > half))
        throw ParameterError(kModule, "x0 outside the box");
    const double dt = o.dt;
    return run_generic(
        LangevinModel::overdamped2, c.params().box_length, false, o, [](ParticleState&, RandomStream&) {},
        [&](ParticleState& s, double xi) { step_overdamped_II(s, c, dt, xi); });
}

DriftDiffusion fpe_coefficients(const EffectiveParamsI& p) {
    p.validate();
    const double D0 = p.eta * p.noise_temperature();
    DriftDiffusion dd;
    dd.drift = [&p](double x) { return -(p.potential.derivative(x) + p.kappa * p.field.grad(x)) / p.eta_eff(x); };
    dd.diffusion = [&p, D0](double x) {
        const double e = p.eta_eff(x);
        return D0 / (e * e);
    };
    return dd;
}

DriftDiffusion fpe_coefficients(const ModelIICoefficients& c) {
    DriftDiffusion dd;
    dd.drift = [&c](double x) { return c.drift(x); };
    dd.diffusion = [&c](double x) { return c.diffusion(x); };
    return dd;
}

} // namespace thermobath
