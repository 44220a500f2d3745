// thermobath — command-line entry point for simulations, solves and self-checks

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermobath/config.hpp"
#include "thermobath/errors.hpp"
#include "thermobath/experiments.hpp"
#include "thermobath/verification.hpp"

namespace fs = std::filesystem;
using namespace thermobath;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kVerification = 4 };

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    unsigned threads{0};
    std::string out;
};

using Runner = std::function<std::vector<std::string>(const ExperimentConfig&, const RunContext&)>;

void write_manifest(const fs::path& dir, const std::string& sub, const ExperimentConfig& cfg, const Flags& flags,
                    const std::vector<std::string>& files, double seconds, const std::string& status) {
    nlohmann::ordered_json j;
    j["subcommand"] = sub;
    j["experiment"] = cfg.name;
    j["seed"] = cfg.seed;
    j["threads"] = flags.threads;
    j["version"] = THERMOBATH_VERSION;
    j["config_path"] = flags.config;
    nlohmann::ordered_json echo = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.echo) echo[k] = v;
    j["config"] = echo;
    j["files"] = files;
    j["wall_time_s"] = seconds;
    j["status"] = status;
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    out << j.dump(2) << '\n';
}

// Outputs go to a staging directory first and are moved into place only on
// success, so a failing run leaves no partial files behind.
int run_artifacts(const std::string& sub, const Runner& runner, const Flags& flags) {
    ExperimentConfig cfg = load_config(flags.config);
    if (flags.seed) cfg.seed = *flags.seed;
    const fs::path out = flags.out.empty() ? fs::path(cfg.output_dir) : fs::path(flags.out);
    const fs::path staging = out / (".staging-" + sub);
    fs::create_directories(staging);

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> files;
    try {
        files = runner(cfg, {staging.string(), flags.threads});
    } catch (...) {
        fs::remove_all(staging);
        throw;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& f : files) fs::rename(staging / f, out / f);
    fs::remove_all(staging);
    write_manifest(out, sub, cfg, flags, files, seconds, "ok");
    return kOk;
}

int run_verify(const Flags& flags) {
    ExperimentConfig cfg;
    if (!flags.config.empty()) cfg = load_config(flags.config);
    if (flags.seed) cfg.seed = *flags.seed;

    VerifyOptions vo;
    vo.full = cfg.verify.scale == "full";
    vo.threads = flags.threads;
    vo.seed = cfg.seed;

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<CheckResult> checks = run_verification(vo);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int failed = 0;
    std::printf("%-52s %-6s %14s %14s %10s\n", "check", "result", "value", "target", "tolerance");
    for (const auto& c : checks) {
        failed += c.passed ? 0 : 1;
        std::printf("%-52s %-6s %14.6g %14.6g %10.3g  %s\n", c.name.c_str(), c.passed ? "PASS" : "FAIL", c.value,
                    c.target, c.tolerance, c.detail.c_str());
    }
    std::printf("%zu checks, %d failed\n", checks.size(), failed);

    if (!flags.out.empty() || !flags.config.empty()) {
        const fs::path out = flags.out.empty() ? fs::path(cfg.output_dir) : fs::path(flags.out);
        fs::create_directories(out);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& c : checks)
            rows.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"target", c.target},
                            {"tolerance", c.tolerance}, {"detail", c.detail}});
        std::ofstream(out / "verify.json", std::ios::binary | std::ios::trunc) << rows.dump(2) << '\n';
        write_manifest(out, "verify", cfg, flags, {"verify.json"}, seconds, failed ? "failed" : "ok");
    }
    return failed ? kVerification : kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermobath: thermophoresis in oscillator-bath models"};
    app.require_subcommand(1);
    Flags flags;

    const std::map<std::string, std::pair<std::string, Runner>> runners = {
        {"simulate-langevin", {"effective Langevin ensemble -> trajectories.csv, snapshot.csv", run_simulate_langevin}},
        {"simulate-micro1", {"explicit driven oscillator bath -> micro1_forces.csv", run_simulate_micro1}},
        {"simulate-micro2", {"field of local baths -> micro2_forces.csv", run_simulate_micro2}},
        {"solve-fpe", {"Fokker-Planck evolution and steady states -> density.csv, flux.csv", run_solve_fpe}},
        {"analyze", {"slope fits, Soret estimate, distances -> fit.csv, soret.csv", run_analyze}},
        {"emit-plots", {"write a matplotlib script for the CSVs in --out", run_emit_plots}},
    };

    auto add_flags = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", flags.config, "INI configuration file");
        if (config_required) c->required();
        sub->add_option("--seed", flags.seed, "master seed (overrides sim.seed)");
        sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
        sub->add_option("--out", flags.out, "output directory (overrides output.dir)");
    };
    for (const auto& [name, entry] : runners) add_flags(app.add_subcommand(name, entry.first), true);
    add_flags(app.add_subcommand("verify", "run the cross-level self-checks and print a PASS/FAIL table"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "verify") return run_verify(flags);
        return run_artifacts(sub, runners.at(sub).second, flags);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error:\n";
        for (const auto& issue : e.issues()) std::cerr << "  " << issue << '\n';
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "error [" << e.module() << "]: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
