// experiments.hpp — Builders from configuration and the subcommand runners

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thermobath/config.hpp"
#include "thermobath/langevin.hpp"
#include "thermobath/microscopic_two.hpp"
#include "thermobath/potential.hpp"
#include "thermobath/spectral.hpp"
#include "thermobath/temperature_field.hpp"

namespace thermobath {

TemperatureField build_temperature(const ExperimentConfig& cfg);
Potential build_potential(const ExperimentConfig& cfg, double mass);
SpectralModel build_spectral(const ExperimentConfig& cfg);
DiscreteBathSpec build_bath(const ExperimentConfig& cfg, long n_oscillators);

// langevin.kappa if set, else p V / (2 T0) from [pressure], else 0.
double resolve_kappa(const ExperimentConfig& cfg, const TemperatureField& field);

EffectiveParamsI build_params_I(const ExperimentConfig& cfg);
EffectiveParamsII build_params_II(const ExperimentConfig& cfg);
EnsembleOptions build_ensemble_options(const ExperimentConfig& cfg, unsigned threads);

struct RunContext {
    std::string out_dir;
    unsigned threads{0};
};

// Each runner writes its CSVs into ctx.out_dir and returns the file names.
std::vector<std::string> run_simulate_langevin(const ExperimentConfig& cfg, const RunContext& ctx);
std::vector<std::string> run_simulate_micro1(const ExperimentConfig& cfg, const RunContext& ctx);
std::vector<std::string> run_simulate_micro2(const ExperimentConfig& cfg, const RunContext& ctx);
std::vector<std::string> run_solve_fpe(const ExperimentConfig& cfg, const RunContext& ctx);
std::vector<std::string> run_analyze(const ExperimentConfig& cfg, const RunContext& ctx);
std::vector<std::string> run_emit_plots(const ExperimentConfig& cfg, const RunContext& ctx);

} // namespace thermobath
