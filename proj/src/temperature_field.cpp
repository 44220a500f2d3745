// temperature_field.cpp — Temperature profiles and the pressure model

#include "thermobath/temperature_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "thermobath/errors.hpp"

namespace thermobath {
namespace {

constexpr const char* kModule = "temperature_field";

void require_domain(const Domain& d) {
    if (!(std::isfinite(d.lo) && std::isfinite(d.hi) && d.hi > d.lo))
        throw ParameterError(kModule, "domain must satisfy lo < hi");
}

} // namespace

std::string to_string(ProfileKind kind) {
    switch (kind) {
    case ProfileKind::constant: return "constant";
    case ProfileKind::linear: return "linear";
    case ProfileKind::exponential: return "exponential";
    case ProfileKind::tabulated: return "tabulated";
    }
    return "unknown";
}

TemperatureField TemperatureField::constant(double T0, Domain domain) {
    require_domain(domain);
    TemperatureField f;
    f.kind_ = ProfileKind::constant;
    f.domain_ = domain;
    f.T0_ = T0;
    f.check_positive();
    return f;
}

TemperatureField TemperatureField::linear(double T0, double slope, Domain domain, double x0) {
    require_domain(domain);
    TemperatureField f;
    f.kind_ = ProfileKind::linear;
    f.domain_ = domain;
    f.T0_ = T0;
    f.slope_ = slope;
    f.x0_ = x0;
    f.check_positive();
    return f;
}

TemperatureField TemperatureField::exponential(double T0, double decay_length, Domain domain, double x0) {
    require_domain(domain);
    if (!(decay_length > 0.0)) throw ParameterError(kModule, "decay_length must be positive");
    TemperatureField f;
    f.kind_ = ProfileKind::exponential;
    f.domain_ = domain;
    f.T0_ = T0;
    f.decay_ = decay_length;
    f.x0_ = x0;
    f.check_positive();
    return f;
}

TemperatureField TemperatureField::tabulated(std::vector<double> x, std::vector<double> T) {
    if (x.size() != T.size() || x.size() < 2)
        throw ParameterError(kModule, "table needs at least two (x, T) rows");
    TemperatureField f;
    f.kind_ = ProfileKind::tabulated;
    f.table_ = MonotoneCubic(Eigen::Map<Eigen::ArrayXd>(x.data(), static_cast<Eigen::Index>(x.size())),
                             Eigen::Map<Eigen::ArrayXd>(T.data(), static_cast<Eigen::Index>(T.size())));
    f.domain_ = {f.table_.lo(), f.table_.hi()};
    f.x0_ = std::clamp(0.0, f.domain_.lo, f.domain_.hi);
    f.T0_ = f.table_.value(f.x0_);
    f.check_positive();
    return f;
}

TemperatureField TemperatureField::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError(kModule, "cannot open temperature table '" + path + "'");
    std::vector<double> xs, ts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0, t = 0.0;
        if (!(row >> x >> t)) {
            if (xs.empty()) continue; // header
            throw ParameterError(kModule, "malformed row in '" + path + "': " + line);
        }
        xs.push_back(x);
        ts.push_back(t);
    }
    return tabulated(std::move(xs), std::move(ts));
}

void TemperatureField::check(double x) const {
    if (!domain_.contains(x))
        throw DomainError(kModule, "x=" + std::to_string(x) + " outside temperature domain [" +
                                       std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + "]");
}

void TemperatureField::check_positive() const {
    if (!(T0_ > 0.0) && kind_ != ProfileKind::tabulated)
        throw ParameterError(kModule, "T0 must be positive");
    // Dense probe; closed forms are monotone so the end points decide, but
    // tabulated profiles need the interior too.
    constexpr int probes = 4097;
    for (int i = 0; i < probes; ++i) {
        const double x = domain_.lo + domain_.width() * i / (probes - 1);
        const double t = eval(x);
        if (!(t > 0.0) || !std::isfinite(t))
            throw ParameterError(kModule, "temperature must be positive on the domain (T(" + std::to_string(x) +
                                              ")=" + std::to_string(t) + ")");
    }
}

double TemperatureField::eval(double x) const {
    check(x);
    switch (kind_) {
    case ProfileKind::constant: return T0_;
    case ProfileKind::linear: return T0_ + slope_ * (x - x0_);
    case ProfileKind::exponential: return T0_ * std::exp(-(x - x0_) / decay_);
    case ProfileKind::tabulated: return table_.value(x);
    }
    return T0_;
}

double TemperatureField::grad(double x) const {
    check(x);
    switch (kind_) {
    case ProfileKind::constant: return 0.0;
    case ProfileKind::linear: return slope_;
    case ProfileKind::exponential: return -T0_ * std::exp(-(x - x0_) / decay_) / decay_;
    case ProfileKind::tabulated: return table_.derivative(x);
    }
    return 0.0;
}

double TemperatureField::curv(double x) const {
    check(x);
    switch (kind_) {
    case ProfileKind::constant:
    case ProfileKind::linear: return 0.0;
    case ProfileKind::exponential: return T0_ * std::exp(-(x - x0_) / decay_) / (decay_ * decay_);
    case ProfileKind::tabulated: return table_.second_derivative(x);
    }
    return 0.0;
}

PressureModel PressureModel::from_geometry(double pressure, double cross_section, double half_size) {
    PressureModel pm;
    pm.pressure = pressure;
    pm.cross_section = cross_section;
    pm.half_size = half_size;
    pm.volume = 2.0 * half_size * cross_section;
    pm.validate();
    return pm;
}

void PressureModel::validate() const {
    if (!(pressure > 0.0)) throw ParameterError(kModule, "pressure must be positive");
    if (!(volume > 0.0)) throw ParameterError(kModule, "particle volume must be positive");
    if (cross_section && half_size) {
        const double v = 2.0 * *half_size * *cross_section;
        if (std::abs(v - volume) > 1e-12 * std::max(1.0, std::abs(volume)))
            throw ParameterError(kModule, "volume must equal 2 r A when both are given");
    }
}

double kappa_from_pressure(const PressureModel& pm, double temperature) {
    pm.validate();
    if (!(temperature > 0.0)) throw ParameterError(kModule, "temperature must be positive");
    return pm.pressure * pm.volume / (2.0 * temperature);
}

} // namespace thermobath
