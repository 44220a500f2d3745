// experiments.cpp — Configuration builders and subcommand runners

#include "thermobath/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "thermobath/analysis.hpp"
#include "thermobath/csv.hpp"
#include "thermobath/errors.hpp"
#include "thermobath/fokker_planck.hpp"
#include "thermobath/microscopic_one.hpp"

namespace thermobath {
namespace {

namespace fs = std::filesystem;

std::string path_in(const RunContext& ctx, const std::string& name) { return (fs::path(ctx.out_dir) / name).string(); }

Domain default_domain(const ExperimentConfig& c) {
    const double half = 0.5 * std::max(c.box_length, c.micro2.box_length);
    return {c.temperature.x_min.value_or(-half), c.temperature.x_max.value_or(half)};
}

DensityProfile initial_density(const ExperimentConfig& c, const Grid& g) {
    const auto gauss = parse_gaussian_initial(c.fpe.initial);
    return gauss ? gaussian_density(g, gauss->first, gauss->second) : uniform_density(g);
}

FluxScheme scheme_of(const ExperimentConfig& c) {
    return c.fpe.scheme == "exponential-fitting" ? FluxScheme::exponential_fitting : FluxScheme::upwind;
}

void write_density(const std::string& path, const DensityProfile& d) {
    CsvWriter w(path, {"x", "P"});
    const Eigen::ArrayXd x = d.grid.centers();
    for (Eigen::Index j = 0; j < d.grid.n; ++j) w.values(x(j), d.P(j));
    w.close();
}

void write_fit_row(CsvWriter& w, const std::string& name, const FitResult& f) {
    w.row({name, format_number(f.estimate), format_number(f.standard_error), format_number(f.window_lo),
           format_number(f.window_hi)});
}

} // namespace

TemperatureField build_temperature(const ExperimentConfig& c) {
    const auto& t = c.temperature;
    const Domain d = default_domain(c);
    if (t.profile == "constant") return TemperatureField::constant(t.T0, d);
    if (t.profile == "linear") return TemperatureField::linear(t.T0, t.slope, d, t.x0);
    if (t.profile == "exponential") return TemperatureField::exponential(t.T0, t.decay_length, d, t.x0);
    return TemperatureField::from_csv(t.table_path);
}

Potential build_potential(const ExperimentConfig& c, double mass) {
    if (c.potential.kind == "harmonic") return Potential::harmonic(mass, c.potential.omega0);
    if (c.potential.kind == "tabulated") return Potential::from_csv(c.potential.table_path);
    return Potential::none();
}

SpectralModel build_spectral(const ExperimentConfig& c) {
    return c.bath.family == "ohmic" ? SpectralModel::ohmic(c.bath.eta, c.bath.cutoff)
                                    : SpectralModel::power_law(c.bath.eta, c.bath.exponent, c.bath.cutoff);
}

DiscreteBathSpec build_bath(const ExperimentConfig& c, long n_oscillators) {
    const SpectralModel m = build_spectral(c);
    return discretize(m, static_cast<std::size_t>(n_oscillators), c.bath.omega_max.value_or(default_omega_max(m)));
}

double resolve_kappa(const ExperimentConfig& c, const TemperatureField& field) {
    if (c.langevin.kappa) return *c.langevin.kappa;
    if (c.pressure.present()) {
        PressureModel pm = c.pressure.V ? PressureModel{*c.pressure.p, *c.pressure.V, c.pressure.A, c.pressure.r}
                                        : PressureModel::from_geometry(*c.pressure.p, *c.pressure.A, *c.pressure.r);
        const double ref = std::clamp(field.reference_position(), field.domain().lo, field.domain().hi);
        return kappa_from_pressure(pm, field.eval(ref));
    }
    return 0.0;
}

EffectiveParamsI build_params_I(const ExperimentConfig& c) {
    EffectiveParamsI p(build_temperature(c));
    p.mass = c.langevin.mass;
    p.eta = c.langevin.eta;
    p.alpha_tilde = c.langevin.alpha_tilde;
    p.kappa = resolve_kappa(c, p.field);
    p.potential = build_potential(c, p.mass);
    p.box_length = c.box_length;
    p.validate();
    return p;
}

EffectiveParamsII build_params_II(const ExperimentConfig& c) {
    EffectiveParamsII p(WeightFunction::gaussian(c.micro2.sigma, c.box_length), build_temperature(c));
    p.eta = c.langevin.eta;
    p.potential = build_potential(c, c.langevin.mass);
    p.box_length = c.box_length;
    p.mode = diffusion_mode_from_string(c.langevin.diffusion_mode);
    return p;
}

EnsembleOptions build_ensemble_options(const ExperimentConfig& c, unsigned threads) {
    EnsembleOptions o;
    o.n_traj = static_cast<std::size_t>(c.langevin.n_traj);
    o.dt = c.langevin.dt;
    o.t_final = c.langevin.t_final;
    o.record_interval = c.langevin.record_interval;
    if (c.langevin.x0 == "uniform") {
        o.placement = InitialPlacement::uniform;
    } else {
        o.placement = InitialPlacement::point;
        o.x0 = std::stod(c.langevin.x0);
    }
    o.seed = c.seed;
    o.threads = threads;
    return o;
}

namespace {

TrajectoryEnsemble simulate(const ExperimentConfig& c, unsigned threads) {
    const EnsembleOptions o = build_ensemble_options(c, threads);
    const LangevinModel model = langevin_model_from_string(c.langevin.model);
    if (model == LangevinModel::overdamped2) {
        const ModelIICoefficients coeffs(build_params_II(c));
        return run_ensemble(coeffs, o);
    }
    return run_ensemble(build_params_I(c), model, o);
}

} // namespace

std::vector<std::string> run_simulate_langevin(const ExperimentConfig& c, const RunContext& ctx) {
    const TrajectoryEnsemble e = simulate(c, ctx.threads);
    const bool with_v = e.velocities.size() > 0;
    {
        CsvWriter w(path_in(ctx, "trajectories.csv"),
                    with_v ? std::vector<std::string>{"t", "traj_id", "x", "v"}
                           : std::vector<std::string>{"t", "traj_id", "x"});
        for (Eigen::Index i = 0; i < e.n_traj(); ++i)
            for (Eigen::Index j = 0; j < e.times.size(); ++j) {
                if (with_v) w.values(e.times(j), std::int64_t(i), e.positions(i, j), e.velocities(i, j));
                else w.values(e.times(j), std::int64_t(i), e.positions(i, j));
            }
        w.close();
    }
    CsvWriter s(path_in(ctx, "snapshot.csv"), {"traj_id", "x"});
    const Eigen::Index last = e.times.size() - 1;
    for (Eigen::Index i = 0; i < e.n_traj(); ++i) s.values(std::int64_t(i), e.positions(i, last));
    s.close();
    return {"trajectories.csv", "snapshot.csv"};
}

std::vector<std::string> run_simulate_micro1(const ExperimentConfig& c, const RunContext& ctx) {
    const TemperatureField field = build_temperature(c);
    const Potential potential = build_potential(c, c.micro1.mass);
    const DiscreteBathSpec spec = build_bath(c, c.bath.n_oscillators);
    const double alpha = c.micro1.alpha_tilde ? *c.micro1.alpha_tilde
                                              : alpha_tilde_for_kappa(spec, resolve_kappa(c, field));
    MicroRunOptions o;
    o.n_realizations = static_cast<std::size_t>(c.micro1.n_realizations);
    o.t_final = c.micro1.t_final;
    o.seed = c.seed;
    o.threads = ctx.threads;

    std::vector<std::string> files{"micro1_forces.csv"};
    if (c.micro1.clamped) {
        o.dt = c.micro1.dt > 0.0 ? c.micro1.dt : 2.0 / spec.max_frequency();
        const ForceRecord r = measure_clamped_force_I(spec, alpha, field, potential, c.micro1.x0, o);
        CsvWriter w(path_in(ctx, files[0]), {"t", "realization_id", "force_on_particle"});
        for (Eigen::Index i = 0; i < r.force.rows(); ++i)
            for (Eigen::Index j = 0; j < r.times.size(); ++j) w.values(r.times(j), std::int64_t(i), r.force(i, j));
        w.close();
        return files;
    }
    o.dt = c.micro1.dt > 0.0 ? c.micro1.dt : 0.099 / spec.max_frequency();
    o.sample_every = std::max(1L, static_cast<long>(std::llround(2.0 / spec.max_frequency() / o.dt)));
    const TrajectoryRecord r =
        simulate_micro_one(spec, alpha, field, potential, c.micro1.mass, c.micro1.x0, c.micro1.kick_velocity, o);
    CsvWriter w(path_in(ctx, files[0]), {"t", "realization_id", "force_on_particle"});
    CsvWriter tr(path_in(ctx, "micro1_trajectories.csv"), {"t", "realization_id", "x", "v"});
    for (Eigen::Index i = 0; i < r.force.rows(); ++i)
        for (Eigen::Index j = 0; j < r.times.size(); ++j) {
            w.values(r.times(j), std::int64_t(i), r.force(i, j));
            tr.values(r.times(j), std::int64_t(i), r.position(i, j), r.velocity(i, j));
        }
    w.close();
    tr.close();
    files.push_back("micro1_trajectories.csv");
    return files;
}

std::vector<std::string> run_simulate_micro2(const ExperimentConfig& c, const RunContext& ctx) {
    const TemperatureField field = build_temperature(c);
    const Potential potential = build_potential(c, c.micro2.mass);
    const DiscreteBathSpec spec = build_bath(c, c.micro2.n_oscillators_per_site);
    const WeightFunction w = WeightFunction::gaussian(c.micro2.sigma, c.micro2.box_length);
    MicroRunOptions o;
    o.n_realizations = static_cast<std::size_t>(c.micro2.n_realizations);
    o.t_final = c.micro2.t_final;
    o.seed = c.seed;
    o.threads = ctx.threads;

    std::vector<std::string> files{"micro2_forces.csv"};
    if (c.micro2.clamped) {
        o.dt = c.micro2.dt > 0.0 ? c.micro2.dt : 2.0 / spec.max_frequency();
        const ForceRecord r = measure_clamped_force_II(spec, w, field, potential, c.micro2.n_sites, c.micro2.x0, o);
        CsvWriter out(path_in(ctx, files[0]), {"t", "realization_id", "force_on_particle"});
        for (Eigen::Index i = 0; i < r.force.rows(); ++i)
            for (Eigen::Index j = 0; j < r.times.size(); ++j) out.values(r.times(j), std::int64_t(i), r.force(i, j));
        out.close();
        return files;
    }
    o.dt = c.micro2.dt > 0.0 ? c.micro2.dt : 0.099 / spec.max_frequency();
    o.sample_every = std::max(1L, static_cast<long>(std::llround(2.0 / spec.max_frequency() / o.dt)));
    const TrajectoryRecord r = simulate_micro_two(spec, w, field, potential, c.micro2.n_sites, c.micro2.mass,
                                                  c.micro2.x0, c.micro2.kick_velocity, o);
    CsvWriter out(path_in(ctx, files[0]), {"t", "realization_id", "force_on_particle"});
    CsvWriter tr(path_in(ctx, "micro2_trajectories.csv"), {"t", "realization_id", "x", "v"});
    for (Eigen::Index i = 0; i < r.force.rows(); ++i)
        for (Eigen::Index j = 0; j < r.times.size(); ++j) {
            out.values(r.times(j), std::int64_t(i), r.force(i, j));
            tr.values(r.times(j), std::int64_t(i), r.position(i, j), r.velocity(i, j));
        }
    out.close();
    tr.close();
    files.push_back("micro2_trajectories.csv");
    return files;
}

std::vector<std::string> run_solve_fpe(const ExperimentConfig& c, const RunContext& ctx) {
    const Grid grid = Grid::box(c.box_length, c.fpe.n_cells);
    const LangevinModel model = langevin_model_from_string(c.langevin.model);
    const FluxScheme scheme = scheme_of(c);

    auto solve = [&](const DriftDiffusion& dd, const DensityProfile* closed) {
        const double dt = c.fpe.dt > 0.0 ? c.fpe.dt : 0.9 * max_stable_dt(dd, grid, scheme);
        const DensityProfile final_state = evolve(dd, initial_density(c, grid), dt, c.fpe.t_final, scheme);
        write_density(path_in(ctx, "density.csv"), final_state);

        const Eigen::ArrayXd F = face_fluxes(dd, final_state, scheme);
        const Eigen::ArrayXd faces = grid.faces();
        CsvWriter fw(path_in(ctx, "flux.csv"), {"x_half", "J"});
        for (Eigen::Index j = 0; j < F.size(); ++j) fw.values(faces(j), F(j));
        fw.close();

        const DensityProfile steady = steady_state_numeric(dd, grid);
        const Eigen::ArrayXd x = grid.centers();
        CsvWriter sw(path_in(ctx, "steady_state.csv"),
                     closed ? std::vector<std::string>{"x", "P_numeric", "P_closed_form"}
                            : std::vector<std::string>{"x", "P_numeric"});
        for (Eigen::Index j = 0; j < grid.n; ++j) {
            if (closed) sw.values(x(j), steady.P(j), closed->P(j));
            else sw.values(x(j), steady.P(j));
        }
        sw.close();
    };

    if (model == LangevinModel::overdamped2) {
        const ModelIICoefficients coeffs(build_params_II(c));
        solve(fpe_coefficients(coeffs), nullptr);
    } else {
        const EffectiveParamsI p = build_params_I(c);
        const bool closed_ok = p.field.has_constant_gradient() && p.potential.kind() == PotentialKind::none;
        if (closed_ok) {
            const DensityProfile closed = steady_state_I(p, grid);
            solve(fpe_coefficients(p), &closed);
        } else {
            solve(fpe_coefficients(p), nullptr);
        }
    }
    return {"density.csv", "flux.csv", "steady_state.csv"};
}

std::vector<std::string> run_analyze(const ExperimentConfig& c, const RunContext& ctx) {
    constexpr Eigen::Index kBins = 40;
    const TrajectoryEnsemble e = simulate(c, ctx.threads);
    const LangevinModel model = langevin_model_from_string(c.langevin.model);
    const TemperatureField field = build_temperature(c);

    HistogramOptions h;
    h.pool_stationary = true;
    h.subsample_interval = 5.0 * c.langevin.mass / c.langevin.eta;
    const DensityProfile hist = histogram(e, kBins, h);

    const Grid grid = Grid::box(c.box_length, kBins);
    DensityProfile steady;
    if (model == LangevinModel::overdamped2) {
        const ModelIICoefficients coeffs(build_params_II(c));
        steady = steady_state_numeric(fpe_coefficients(coeffs), grid);
    } else {
        const EffectiveParamsI p = build_params_I(c);
        steady = steady_state_numeric(fpe_coefficients(p), grid);
    }

    CsvWriter fw(path_in(ctx, "fit.csv"), {"quantity", "estimate", "stderr", "window_lo", "window_hi"});
    write_fit_row(fw, "log_slope_histogram", fit_log_slope(hist));
    write_fit_row(fw, "log_slope_steady_state", fit_log_slope(steady));
    const double l1 = density_distance(hist, steady);
    fw.row({"l1_histogram_vs_steady_state", format_number(l1), "0", format_number(grid.lo), format_number(grid.hi)});
    fw.close();

    std::vector<std::string> files{"fit.csv"};
    bool gradient = true;
    for (double x : grid.centers()) gradient = gradient && field.grad(x) != 0.0;
    if (gradient && (hist.P > 0.0).all()) {
        const SoretEstimate s = estimate_soret(hist, field);
        CsvWriter sw(path_in(ctx, "soret.csv"), {"x", "S_T_hat", "S_T_theory"});
        for (Eigen::Index i = 0; i < s.x.size(); ++i) sw.values(s.x(i), s.s_hat(i), s.s_theory(i));
        sw.close();
        files.push_back("soret.csv");
    }
    return files;
}

std::vector<std::string> run_emit_plots(const ExperimentConfig&, const RunContext& ctx) {
    std::ofstream out(path_in(ctx, "plot_results.py"), std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cli", "cannot write plot_results.py");
    out << R"PY(#!/usr/bin/env python3
"""Plots whatever thermobath CSVs exist next to this script."""
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

here = os.path.dirname(os.path.abspath(__file__))


def load(name):
    path = os.path.join(here, name)
    return pd.read_csv(path) if os.path.exists(path) else None


def save(fig, name):
    fig.tight_layout()
    fig.savefig(os.path.join(here, name), dpi=120)
    plt.close(fig)
    print("wrote", name)


density, steady = load("density.csv"), load("steady_state.csv")
if density is not None:
    fig, ax = plt.subplots()
    ax.semilogy(density.x, density.P, label="evolved")
    if steady is not None:
        ax.semilogy(steady.x, steady.P_numeric, "--", label="zero-flux")
        if "P_closed_form" in steady:
            ax.semilogy(steady.x, steady.P_closed_form, ":", label="closed form")
    ax.set_xlabel("x")
    ax.set_ylabel("P(x)")
    ax.legend()
    save(fig, "density.png")

snap = load("snapshot.csv")
if snap is not None:
    fig, ax = plt.subplots()
    ax.hist(snap.x, bins=40, density=True)
    ax.set_xlabel("x")
    ax.set_ylabel("density at t_final")
    save(fig, "snapshot.png")

soret = load("soret.csv")
if soret is not None:
    fig, ax = plt.subplots()
    ax.plot(soret.x, soret.S_T_hat, ".", label="estimate")
    ax.plot(soret.x, soret.S_T_theory, "-", label="1/T")
    ax.set_xlabel("x")
    ax.set_ylabel("S_T")
    ax.legend()
    save(fig, "soret.png")

for name in ("micro1_forces.csv", "micro2_forces.csv"):
    forces = load(name)
    if forces is None:
        continue
    first = forces[forces.realization_id == 0]
    fig, ax = plt.subplots()
    ax.plot(first.t, first.force_on_particle, lw=0.5)
    ax.set_xlabel("t")
    ax.set_ylabel("force on particle")
    save(fig, name.replace(".csv", ".png"))

sys.exit(0)
)PY";
    if (!out) throw Error("cli", "write failed for plot_results.py");
    return {"plot_results.py"};
}

} // namespace thermobath
