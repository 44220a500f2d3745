// config.hpp — Experiment configuration (INI file, flat sections)

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thermobath {

struct ExperimentConfig {
    std::string name{"thermobath"};
    std::uint64_t seed{1};
    std::string output_dir{"out"};
    double boltzmann{1.0}; // units.k_B; only 1 is accepted

    struct Temperature {
        std::string profile{"linear"}; // constant | linear | exponential | tabulated
        double T0{1.0};
        double slope{0.1};
        double decay_length{10.0};
        double x0{0.0};
        std::optional<double> x_min;   // default: box
        std::optional<double> x_max;
        std::string table_path;
    } temperature;

    struct Pressure {
        std::optional<double> p;
        std::optional<double> V;
        std::optional<double> A;
        std::optional<double> r;
        bool present() const { return p.has_value(); }
    } pressure;

    struct Bath {
        std::string family{"ohmic"}; // ohmic | power-law
        double eta{1.0};
        double exponent{1.0};
        double cutoff{50.0};
        long n_oscillators{4000};
        std::optional<double> omega_max; // default 50 cutoff
    } bath;

    struct PotentialSection {
        std::string kind{"none"}; // none | harmonic | tabulated
        double omega0{1.0};
        std::string table_path;
    } potential;

    double box_length{10.0};

    struct Langevin {
        std::string model{"overdamped1"};
        long n_traj{10000};
        double dt{0.01};
        double t_final{10.0};
        double record_interval{0.0};
        std::string x0{"uniform"}; // "uniform" or a number
        double mass{1.0};
        double eta{1.0};
        std::optional<double> kappa; // else from [pressure], else 0
        double alpha_tilde{0.0};
        std::string diffusion_mode{"local-constant-friction"};
    } langevin;

    struct Micro1 {
        long n_realizations{100};
        double dt{0.0}; // 0: automatic (0.099/omega_max free, 2/omega_max clamped)
        double t_final{2.0};
        bool clamped{true};
        std::optional<double> alpha_tilde; // else from kappa via the bath sum
        double x0{0.0};
        double kick_velocity{0.0};
        double mass{1.0};
    } micro1;

    struct Micro2 {
        long n_sites{128};
        long n_oscillators_per_site{1000};
        double sigma{1.0};
        double box_length{10.0};
        double dt{0.0};
        double t_final{2.0};
        bool clamped{true};
        long n_realizations{16};
        double x0{0.0};
        double kick_velocity{0.1};
        double mass{1.0};
    } micro2;

    struct Fpe {
        long n_cells{512};
        double dt{0.0}; // 0: automatic
        double t_final{100.0};
        std::string initial{"uniform"}; // uniform | gaussian(x0, s)
        std::string scheme{"upwind"};   // upwind | exponential-fitting
    } fpe;

    struct Verify {
        std::string scale{"quick"}; // quick | full
    } verify;

    // Every key as read, in file order, for the run record.
    std::vector<std::pair<std::string, std::string>> echo;
};

// Parses and validates. Unknown keys, malformed values and violated
// preconditions are all collected and thrown together as one ConfigError.
ExperimentConfig parse_config(std::istream& in, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

// Validation only (parse_config already calls it).
std::vector<std::string> validation_issues(const ExperimentConfig& cfg);

// Parses "gaussian(x0, s)"; nullopt for "uniform".
std::optional<std::pair<double, double>> parse_gaussian_initial(const std::string& spec);

} // namespace thermobath
