// microscopic_one.cpp — Explicit driven oscillator bath

#include "thermobath/microscopic_one.hpp"

#include <cmath>
#include <string>

#include "thermobath/errors.hpp"
#include "thermobath/parallel.hpp"

namespace thermobath {
namespace {
constexpr const char* kModule = "microscopic_one";

Eigen::Index sample_count(double t_final, double dt) {
    return static_cast<Eigen::Index>(std::floor(t_final / dt + 1e-9)) + 1;
}
} // namespace

void require_before_recurrence(const DiscreteBathSpec& spec, double t_final, const char* module) {
    if (t_final >= spec.recurrence_time())
        throw ParameterError(module, "t_final " + std::to_string(t_final) + " reaches the bath recurrence time " +
                                         std::to_string(spec.recurrence_time()) +
                                         "; use more oscillators or a shorter run");
}

void BathStateI::check_finite(long step) const {
    if (!std::isfinite(x) || !std::isfinite(px))
        throw CorruptedStateError(kModule, "non-finite particle state", step);
}

BathStateI sample_initial_bath(std::shared_ptr<const DiscreteBathSpec> spec, double alpha_tilde,
                               double temperature, double temperature_gradient, double x0,
                               RandomStream& rng, double mass, double v0) {
    spec->validate();
    if (temperature < 0.0) throw ParameterError(kModule, "temperature must be non-negative");
    if (!(mass > 0.0)) throw ParameterError(kModule, "particle mass must be positive");

    const Eigen::ArrayXd stiffness = spec->mass * spec->omega.square();
    const Eigen::Index n = spec->count();

    BathStateI s;
    s.q.resize(n);
    s.p.resize(n);
    rng.fill_normal(s.q);
    rng.fill_normal(s.p);
    const double shift = x0 - alpha_tilde * temperature_gradient;
    s.q = s.q * (temperature / stiffness).sqrt() + spec->coupling / stiffness * shift;
    s.p = s.p * (spec->mass * temperature).sqrt();
    s.x = x0;
    s.mass = mass;
    s.px = mass * v0;
    s.alpha_tilde = alpha_tilde;
    s.spec = std::move(spec);
    return s;
}

BathStateI sample_initial_bath(std::shared_ptr<const DiscreteBathSpec> spec, double alpha_tilde,
                               const TemperatureField& field, double x0, std::uint64_t seed, double mass,
                               double v0) {
    RandomStream rng(seed, StreamFamily::micro_one, 0);
    return sample_initial_bath(std::move(spec), alpha_tilde, field.eval(x0), field.grad(x0), x0, rng, mass, v0);
}

VelocityVerletI::VelocityVerletI(const DiscreteBathSpec& spec, const TemperatureField& field,
                                 const Potential& potential, double dt, double particle_mass)
    : field_(field), potential_(potential), dt_(dt), mass_(particle_mass) {
    spec.validate();
    if (!(dt > 0.0)) throw ParameterError(kModule, "dt must be positive");
    if (dt >= 0.1 / spec.max_frequency())
        throw ParameterError(kModule, "dt must be below 0.1/max(omega_k) = " + std::to_string(0.1 / spec.max_frequency()));
    if (potential.kind() == PotentialKind::harmonic && dt >= 0.1 * std::sqrt(particle_mass / potential.stiffness()))
        throw ParameterError(kModule, "dt must be below 0.1 sqrt(M/V'')");
    c_ = spec.coupling;
    stiffness_ = spec.mass * spec.omega.square();
    inv_m_ = spec.mass.inverse();
    counterterm_ = counterterm_stiffness(spec);
}

double VelocityVerletI::drive_center(const BathStateI& s, double x) const {
    return s.alpha_tilde == 0.0 ? x : x - s.alpha_tilde * field_.grad(x);
}

double VelocityVerletI::particle_force(const BathStateI& s) const {
    return -potential_.derivative(s.x) + (c_ * s.q).sum() - counterterm_ * s.x;
}

void VelocityVerletI::step(BathStateI& s) {
    const double h = 0.5 * dt_;
    const double u_old = drive_center(s, s.x);
    const double grad_old = s.alpha_tilde == 0.0 ? 0.0 : field_.grad(s.x);
    const double cq_old = (c_ * s.q).sum();

    s.px += h * (-potential_.derivative(s.x) + cq_old - counterterm_ * s.x);
    s.x += dt_ * s.px / s.mass;

    const double u_new = drive_center(s, s.x);
    s.p += h * (c_ * u_old - stiffness_ * s.q);
    s.q += dt_ * inv_m_ * s.p;
    s.p += h * (c_ * u_new - stiffness_ * s.q);
    const double cq_new = (c_ * s.q).sum();

    s.px += h * (-potential_.derivative(s.x) + cq_new - counterterm_ * s.x);

    if (s.alpha_tilde != 0.0) {
        const double grad_new = field_.grad(s.x);
        work_ += -s.alpha_tilde * 0.5 * (grad_old + grad_new) * (cq_new - cq_old);
    }
    ++steps_;
    s.check_finite(steps_);
}

void VelocityVerletI::run(BathStateI& s, long n_steps) {
    for (long i = 0; i < n_steps; ++i) step(s);
}

double VelocityVerletI::hamiltonian(const BathStateI& s) const {
    const double particle = 0.5 * s.px * s.px / s.mass + potential_.value(s.x);
    const Eigen::ArrayXd disp = s.q - c_ / stiffness_ * s.x;
    const double bath = (0.5 * inv_m_ * s.p.square() + 0.5 * stiffness_ * disp.square()).sum();
    return particle + bath;
}

double VelocityVerletI::total_energy(const BathStateI& s) const {
    const double ext = s.alpha_tilde == 0.0 ? 0.0 : s.alpha_tilde * field_.grad(s.x) * (c_ * s.q).sum();
    return hamiltonian(s) + ext;
}

void step(BathStateI& state, const TemperatureField& field, const Potential& potential, double dt) {
    VelocityVerletI vv(*state.spec, field, potential, dt, state.mass);
    vv.step(state);
}

ClampedPropagatorI::ClampedPropagatorI(const DiscreteBathSpec& spec, const TemperatureField& field,
                                       const Potential& potential, double x_clamp, double alpha_tilde,
                                       double sample_dt) {
    spec.validate();
    if (!(sample_dt > 0.0)) throw ParameterError(kModule, "sample interval must be positive");
    c_ = spec.coupling;
    const Eigen::ArrayXd stiffness = spec.mass * spec.omega.square();
    const double u = x_clamp - alpha_tilde * field.grad(x_clamp);
    center_ = c_ / stiffness * u;
    cos_ = (spec.omega * sample_dt).cos();
    sin_ = (spec.omega * sample_dt).sin();
    m_omega_ = spec.mass * spec.omega;
    static_force_ = -potential.derivative(x_clamp) - counterterm_stiffness(spec) * x_clamp;
}

void ClampedPropagatorI::advance(BathStateI& s) const {
    for (Eigen::Index k = 0; k < s.q.size(); ++k) {
        const double d = s.q(k) - center_(k);
        const double v = s.p(k) / m_omega_(k);
        s.q(k) = center_(k) + d * cos_(k) + v * sin_(k);
        s.p(k) = m_omega_(k) * (v * cos_(k) - d * sin_(k));
    }
}

double ClampedPropagatorI::force(const BathStateI& s) const { return static_force_ + (c_ * s.q).sum(); }

ForceRecord measure_clamped_force_I(const DiscreteBathSpec& spec, double alpha_tilde, const TemperatureField& field,
                                    const Potential& potential, double x_clamp, const MicroRunOptions& opts) {
    require_before_recurrence(spec, opts.t_final, kModule);
    if (opts.n_realizations < 1) throw ParameterError(kModule, "need at least one realization");

    auto shared = std::make_shared<const DiscreteBathSpec>(spec);
    const ClampedPropagatorI prop(spec, field, potential, x_clamp, alpha_tilde, opts.dt);
    const Eigen::Index n_t = sample_count(opts.t_final, opts.dt);
    const double T = field.eval(x_clamp);
    const double dT = field.grad(x_clamp);

    ForceRecord rec;
    rec.times = Eigen::ArrayXd::LinSpaced(n_t, 0.0, opts.dt * static_cast<double>(n_t - 1));
    rec.force.resize(static_cast<Eigen::Index>(opts.n_realizations), n_t);

    parallel_for(opts.n_realizations, opts.threads, [&](std::size_t r) {
        RandomStream rng(opts.seed, StreamFamily::micro_one, r);
        BathStateI s = sample_initial_bath(shared, alpha_tilde, T, dT, x_clamp, rng);
        const auto row = static_cast<Eigen::Index>(r);
        for (Eigen::Index j = 0; j < n_t; ++j) {
            if (j > 0) prop.advance(s);
            const double f = prop.force(s);
            if (!std::isfinite(f)) throw CorruptedStateError(kModule, "non-finite clamped force", j);
            rec.force(row, j) = f;
        }
    });
    return rec;
}

TrajectoryRecord simulate_micro_one(const DiscreteBathSpec& spec, double alpha_tilde, const TemperatureField& field,
                                    const Potential& potential, double mass, double x0, double v0,
                                    const MicroRunOptions& opts) {
    require_before_recurrence(spec, opts.t_final, kModule);
    if (opts.n_realizations < 1) throw ParameterError(kModule, "need at least one realization");
    if (opts.sample_every < 1) throw ParameterError(kModule, "sample_every must be at least 1");

    auto shared = std::make_shared<const DiscreteBathSpec>(spec);
    const long n_steps = static_cast<long>(std::llround(opts.t_final / opts.dt));
    const Eigen::Index n_t = n_steps / opts.sample_every + 1;
    const double T = field.eval(x0);
    const double dT = field.grad(x0);
    const auto R = static_cast<Eigen::Index>(opts.n_realizations);

    TrajectoryRecord rec;
    rec.times = Eigen::ArrayXd::LinSpaced(n_t, 0.0, opts.dt * static_cast<double>(opts.sample_every * (n_t - 1)));
    rec.position.resize(R, n_t);
    rec.velocity.resize(R, n_t);
    rec.force.resize(R, n_t);

    parallel_for(opts.n_realizations, opts.threads, [&](std::size_t r) {
        RandomStream rng(opts.seed, StreamFamily::micro_one, r);
        BathStateI s = sample_initial_bath(shared, alpha_tilde, T, dT, x0, rng, mass, v0);
        VelocityVerletI vv(spec, field, potential, opts.dt, mass);
        const auto row = static_cast<Eigen::Index>(r);
        for (Eigen::Index j = 0; j < n_t; ++j) {
            if (j > 0) vv.run(s, opts.sample_every);
            rec.position(row, j) = s.x;
            rec.velocity(row, j) = s.velocity();
            rec.force(row, j) = vv.particle_force(s);
        }
    });
    return rec;
}

EffectiveCoefficientsI measure_effective_coefficients(const DiscreteBathSpec& spec, double alpha_tilde,
                                                      const TemperatureField& field,
                                                      const CoefficientProtocol& pr) {
    const Potential none;
    const double x_c = pr.x_clamp;
    EffectiveCoefficientsI out;

    const ForceRecord clamped = measure_clamped_force_I(spec, alpha_tilde, field, none, x_c, pr.clamped);
    const ForceStatistics stats = force_statistics(clamped.force, pr.clamped.dt, pr.correlation_window);
    out.mean_force = stats.mean;
    out.mean_force_stderr = stats.mean_stderr;
    out.noise_correlation = stats.covariance;
    out.lag_dt = stats.lag_dt;
    out.noise_integral = stats.integral;

    const double grad_c = field.grad(x_c);
    if (grad_c != 0.0) {
        out.kappa_hat.estimate = -stats.mean / grad_c;
        out.kappa_hat.standard_error = stats.mean_stderr / std::abs(grad_c);
    }
    out.kappa_hat.window_lo = 0.0;
    out.kappa_hat.window_hi = pr.clamped.t_final;

    const TemperatureField uniform = TemperatureField::constant(field.eval(x_c), field.domain());
    const TrajectoryRecord kick =
        simulate_micro_one(spec, 0.0, uniform, none, pr.mass, x_c, pr.kick_velocity, pr.kick);
    const Eigen::ArrayXd mean_v = kick.velocity.colwise().mean().transpose();
    FitResult rate = fit_relaxation_rate(kick.times, mean_v, pr.fit_lo, pr.fit_hi);
    out.eta_hat = rate;
    out.eta_hat.estimate = pr.mass * rate.estimate;
    out.eta_hat.standard_error = pr.mass * rate.standard_error;
    return out;
}

} // namespace thermobath
