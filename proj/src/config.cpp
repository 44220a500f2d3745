// config.cpp — INI parsing and validation

#include "thermobath/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <regex>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "thermobath/errors.hpp"

namespace thermobath {
namespace {

namespace fs = std::filesystem;
using Issues = std::vector<std::string>;
using Setter = std::function<void(const std::string&, ExperimentConfig&, Issues&)>;

std::string trim(std::string s) {
    const auto a = s.find_first_not_of(" \t\r\"");
    const auto b = s.find_last_not_of(" \t\r\"");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

bool to_double(const std::string& s, double& out) {
    const char* end = s.data() + s.size();
    auto r = std::from_chars(s.data(), end, out);
    return r.ec == std::errc{} && r.ptr == end;
}

template <class Int>
bool to_int(const std::string& s, Int& out) {
    const char* end = s.data() + s.size();
    auto r = std::from_chars(s.data(), end, out);
    return r.ec == std::errc{} && r.ptr == end;
}

template <class Get>
Setter real_at(Get get) {
    return [get](const std::string& v, ExperimentConfig& c, Issues& is) {
        double d;
        if (!to_double(v, d)) is.push_back("expected a number, got '" + v + "'");
        else get(c) = d;
    };
}

template <class Get>
Setter opt_real_at(Get get) {
    return [get](const std::string& v, ExperimentConfig& c, Issues& is) {
        double d;
        if (!to_double(v, d)) is.push_back("expected a number, got '" + v + "'");
        else get(c) = d;
    };
}

template <class Get>
Setter int_at(Get get) {
    return [get](const std::string& v, ExperimentConfig& c, Issues& is) {
        long d;
        if (!to_int(v, d)) is.push_back("expected an integer, got '" + v + "'");
        else get(c) = d;
    };
}

template <class Get>
Setter bool_at(Get get) {
    return [get](const std::string& v, ExperimentConfig& c, Issues& is) {
        if (v == "true" || v == "1" || v == "yes") get(c) = true;
        else if (v == "false" || v == "0" || v == "no") get(c) = false;
        else is.push_back("expected true/false, got '" + v + "'");
    };
}

template <class Get>
Setter str_at(Get get, std::vector<std::string> allowed = {}) {
    return [get, allowed](const std::string& v, ExperimentConfig& c, Issues& is) {
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            is.push_back("'" + v + "' is not one of {" + list + "}");
            return;
        }
        get(c) = v;
    };
}

#define FIELD(expr) [](ExperimentConfig & c) -> auto& { return c.expr; }

const std::map<std::string, Setter>& schema() {
    static const std::map<std::string, Setter> s = {
        {"experiment.name", str_at(FIELD(name))},
        {"sim.seed",
         [](const std::string& v, ExperimentConfig& c, Issues& is) {
             std::uint64_t d;
             if (!to_int(v, d)) is.push_back("expected an unsigned 64-bit integer, got '" + v + "'");
             else c.seed = d;
         }},
        {"output.dir", str_at(FIELD(output_dir))},
        {"units.k_B", real_at(FIELD(boltzmann))},
        {"temperature.profile", str_at(FIELD(temperature.profile), {"constant", "linear", "exponential", "tabulated"})},
        {"temperature.T0", real_at(FIELD(temperature.T0))},
        {"temperature.slope", real_at(FIELD(temperature.slope))},
        {"temperature.decay_length", real_at(FIELD(temperature.decay_length))},
        {"temperature.x0", real_at(FIELD(temperature.x0))},
        {"temperature.x_min", opt_real_at(FIELD(temperature.x_min))},
        {"temperature.x_max", opt_real_at(FIELD(temperature.x_max))},
        {"temperature.table_path", str_at(FIELD(temperature.table_path))},
        {"pressure.p", opt_real_at(FIELD(pressure.p))},
        {"pressure.V", opt_real_at(FIELD(pressure.V))},
        {"pressure.A", opt_real_at(FIELD(pressure.A))},
        {"pressure.r", opt_real_at(FIELD(pressure.r))},
        {"bath.family", str_at(FIELD(bath.family), {"ohmic", "power-law"})},
        {"bath.eta", real_at(FIELD(bath.eta))},
        {"bath.exponent", real_at(FIELD(bath.exponent))},
        {"bath.cutoff", real_at(FIELD(bath.cutoff))},
        {"bath.n_oscillators", int_at(FIELD(bath.n_oscillators))},
        {"bath.omega_max", opt_real_at(FIELD(bath.omega_max))},
        {"potential.kind", str_at(FIELD(potential.kind), {"none", "harmonic", "tabulated"})},
        {"potential.omega0", real_at(FIELD(potential.omega0))},
        {"potential.table_path", str_at(FIELD(potential.table_path))},
        {"box.length", real_at(FIELD(box_length))},
        {"langevin.model", str_at(FIELD(langevin.model), {"underdamped1", "overdamped1", "overdamped2"})},
        {"langevin.n_traj", int_at(FIELD(langevin.n_traj))},
        {"langevin.dt", real_at(FIELD(langevin.dt))},
        {"langevin.t_final", real_at(FIELD(langevin.t_final))},
        {"langevin.record_interval", real_at(FIELD(langevin.record_interval))},
        {"langevin.x0", str_at(FIELD(langevin.x0))},
        {"langevin.mass", real_at(FIELD(langevin.mass))},
        {"langevin.eta", real_at(FIELD(langevin.eta))},
        {"langevin.kappa", opt_real_at(FIELD(langevin.kappa))},
        {"langevin.alpha_tilde", real_at(FIELD(langevin.alpha_tilde))},
        {"langevin.diffusion_mode",
         str_at(FIELD(langevin.diffusion_mode), {"exact", "local", "local-constant-friction"})},
        {"micro1.n_realizations", int_at(FIELD(micro1.n_realizations))},
        {"micro1.dt", real_at(FIELD(micro1.dt))},
        {"micro1.t_final", real_at(FIELD(micro1.t_final))},
        {"micro1.clamped", bool_at(FIELD(micro1.clamped))},
        {"micro1.alpha_tilde", opt_real_at(FIELD(micro1.alpha_tilde))},
        {"micro1.x0", real_at(FIELD(micro1.x0))},
        {"micro1.kick_velocity", real_at(FIELD(micro1.kick_velocity))},
        {"micro1.mass", real_at(FIELD(micro1.mass))},
        {"micro2.n_sites", int_at(FIELD(micro2.n_sites))},
        {"micro2.n_oscillators_per_site", int_at(FIELD(micro2.n_oscillators_per_site))},
        {"micro2.sigma", real_at(FIELD(micro2.sigma))},
        {"micro2.box_length", real_at(FIELD(micro2.box_length))},
        {"micro2.dt", real_at(FIELD(micro2.dt))},
        {"micro2.t_final", real_at(FIELD(micro2.t_final))},
        {"micro2.clamped", bool_at(FIELD(micro2.clamped))},
        {"micro2.n_realizations", int_at(FIELD(micro2.n_realizations))},
        {"micro2.x0", real_at(FIELD(micro2.x0))},
        {"micro2.kick_velocity", real_at(FIELD(micro2.kick_velocity))},
        {"micro2.mass", real_at(FIELD(micro2.mass))},
        {"fpe.n_cells", int_at(FIELD(fpe.n_cells))},
        {"fpe.dt", real_at(FIELD(fpe.dt))},
        {"fpe.t_final", real_at(FIELD(fpe.t_final))},
        {"fpe.initial", str_at(FIELD(fpe.initial))},
        {"fpe.scheme", str_at(FIELD(fpe.scheme), {"upwind", "exponential-fitting"})},
        {"verify.scale", str_at(FIELD(verify.scale), {"quick", "full"})},
    };
    return s;
}

#undef FIELD

std::string resolve(const std::string& path, const std::string& base) {
    if (path.empty()) return path;
    const fs::path p(path);
    return p.is_absolute() ? path : (fs::path(base) / p).lexically_normal().string();
}

} // namespace

std::optional<std::pair<double, double>> parse_gaussian_initial(const std::string& spec) {
    if (spec == "uniform") return std::nullopt;
    static const std::regex re(R"(\s*gaussian\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*)");
    std::smatch m;
    double a, b;
    if (!std::regex_match(spec, m, re) || !to_double(m[1].str(), a) || !to_double(m[2].str(), b))
        throw ConfigError({"fpe.initial: expected 'uniform' or 'gaussian(x0, s)', got '" + spec + "'"});
    return std::make_pair(a, b);
}

std::vector<std::string> validation_issues(const ExperimentConfig& c) {
    Issues is;
    auto need = [&](bool ok, const std::string& msg) {
        if (!ok) is.push_back(msg);
    };
    need(c.boltzmann == 1.0, "units.k_B: only k_B = 1 is supported (temperatures in energy units)");
    need(c.box_length > 0.0, "box.length: must be positive");

    const auto& t = c.temperature;
    need(t.T0 > 0.0, "temperature.T0: must be positive");
    if (t.profile == "exponential") need(t.decay_length > 0.0, "temperature.decay_length: must be positive");
    if (t.profile == "tabulated") {
        need(!t.table_path.empty(), "temperature.table_path: required for a tabulated profile");
        need(t.table_path.empty() || fs::exists(t.table_path),
             "temperature.table_path: file '" + t.table_path + "' does not exist");
    }
    if (t.profile == "linear") {
        const double lo = t.x_min.value_or(-0.5 * c.box_length);
        const double hi = t.x_max.value_or(0.5 * c.box_length);
        need(t.T0 + t.slope * (lo - t.x0) > 0.0 && t.T0 + t.slope * (hi - t.x0) > 0.0,
             "temperature.slope: linear profile turns non-positive inside the domain");
    }
    if (t.x_min && t.x_max) need(*t.x_min < *t.x_max, "temperature.x_min: must be below temperature.x_max");

    if (c.pressure.present()) {
        need(*c.pressure.p > 0.0, "pressure.p: must be positive");
        need(c.pressure.V.has_value() || (c.pressure.A && c.pressure.r),
             "pressure.V: give V or both A and r");
        if (c.pressure.V) need(*c.pressure.V > 0.0, "pressure.V: must be positive");
    }

    need(c.bath.eta > 0.0, "bath.eta: must be positive");
    need(c.bath.cutoff > 0.0, "bath.cutoff: must be positive");
    need(c.bath.exponent > 0.0, "bath.exponent: must be positive");
    need(c.bath.family != "ohmic" || c.bath.exponent == 1.0, "bath.exponent: ohmic family requires 1");
    need(c.bath.n_oscillators >= 1, "bath.n_oscillators: must be at least 1");
    if (c.bath.omega_max) need(*c.bath.omega_max > 0.0, "bath.omega_max: must be positive");

    if (c.potential.kind == "harmonic") need(c.potential.omega0 > 0.0, "potential.omega0: must be positive");
    if (c.potential.kind == "tabulated")
        need(!c.potential.table_path.empty() && fs::exists(c.potential.table_path),
             "potential.table_path: missing or nonexistent file");

    const auto& l = c.langevin;
    need(l.n_traj >= 1, "langevin.n_traj: must be at least 1");
    need(l.dt > 0.0, "langevin.dt: must be positive");
    need(l.t_final >= 0.0, "langevin.t_final: must be non-negative");
    need(l.record_interval >= 0.0, "langevin.record_interval: must be non-negative");
    need(l.mass > 0.0, "langevin.mass: must be positive");
    need(l.eta > 0.0, "langevin.eta: must be positive");
    if (l.x0 != "uniform") {
        double v;
        need(to_double(l.x0, v) && std::abs(v) <= 0.5 * c.box_length,
             "langevin.x0: expected 'uniform' or a position inside the box");
    }
    if (l.model == "overdamped2") need(c.micro2.sigma > 0.0, "micro2.sigma: must be positive");

    const auto& m1 = c.micro1;
    need(m1.n_realizations >= 1, "micro1.n_realizations: must be at least 1");
    need(m1.dt >= 0.0, "micro1.dt: must be non-negative (0 selects automatically)");
    need(m1.t_final > 0.0, "micro1.t_final: must be positive");
    need(m1.mass > 0.0, "micro1.mass: must be positive");

    const auto& m2 = c.micro2;
    need(m2.n_sites >= 1, "micro2.n_sites: must be at least 1");
    need(m2.n_oscillators_per_site >= 1, "micro2.n_oscillators_per_site: must be at least 1");
    need(m2.sigma > 0.0, "micro2.sigma: must be positive");
    need(m2.box_length > 0.0, "micro2.box_length: must be positive");
    need(m2.dt >= 0.0, "micro2.dt: must be non-negative (0 selects automatically)");
    need(m2.t_final > 0.0, "micro2.t_final: must be positive");
    need(m2.n_realizations >= 1, "micro2.n_realizations: must be at least 1");
    need(m2.mass > 0.0, "micro2.mass: must be positive");

    need(c.fpe.n_cells >= 8, "fpe.n_cells: must be at least 8");
    need(c.fpe.dt >= 0.0, "fpe.dt: must be non-negative (0 selects automatically)");
    need(c.fpe.t_final >= 0.0, "fpe.t_final: must be non-negative");
    try {
        parse_gaussian_initial(c.fpe.initial);
    } catch (const ConfigError& e) {
        for (const auto& s : e.issues()) is.push_back(s);
    }
    return is;
}

ExperimentConfig parse_config(std::istream& in, const std::string& base_dir) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError({std::string("syntax: ") + e.message() + " (line " + std::to_string(e.line()) + ")"});
    }

    ExperimentConfig c;
    Issues issues;
    const auto& table = schema();
    for (const auto& [section, keys] : tree) {
        if (keys.empty() && !keys.data().empty()) {
            issues.push_back(section + ": key outside any section");
            continue;
        }
        for (const auto& [key, node] : keys) {
            const std::string full = section + "." + key;
            const std::string value = trim(node.data());
            auto it = table.find(full);
            if (it == table.end()) {
                issues.push_back(full + ": unknown key");
                continue;
            }
            Issues local;
            it->second(value, c, local);
            for (const auto& s : local) issues.push_back(full + ": " + s);
            c.echo.emplace_back(full, value);
        }
    }
    c.temperature.table_path = resolve(c.temperature.table_path, base_dir);
    c.potential.table_path = resolve(c.potential.table_path, base_dir);

    for (auto& s : validation_issues(c)) issues.push_back(std::move(s));
    if (!issues.empty()) throw ConfigError(issues);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    return parse_config(in, fs::path(path).parent_path().string().empty() ? "." : fs::path(path).parent_path().string());
}

} // namespace thermobath
