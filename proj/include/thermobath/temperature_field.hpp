// temperature_field.hpp — Imposed temperature profile T(x) and pressure-model parameters
//
// Units: k_B = 1 throughout, so temperatures carry energy units.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermobath/interpolation.hpp"

namespace thermobath {

struct Domain {
    double lo{0.0};
    double hi{0.0};

    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
};

enum class ProfileKind { constant, linear, exponential, tabulated };

std::string to_string(ProfileKind kind);

// Immutable after construction; safe to share across threads.
class TemperatureField {
public:
    static TemperatureField constant(double T0, Domain domain);
    // T(x) = T0 + slope (x - x0)
    static TemperatureField linear(double T0, double slope, Domain domain, double x0 = 0.0);
    // T(x) = T0 exp(-(x - x0)/decay_length)
    static TemperatureField exponential(double T0, double decay_length, Domain domain, double x0 = 0.0);
    // Monotone cubic through sorted (x, T) samples; domain = sample range.
    static TemperatureField tabulated(std::vector<double> x, std::vector<double> T);
    // Two-column CSV (x, T), optional header row.
    static TemperatureField from_csv(const std::string& path);

    double eval(double x) const;
    double grad(double x) const;
    double curv(double x) const;

    ProfileKind kind() const { return kind_; }
    const Domain& domain() const { return domain_; }
    double reference_temperature() const { return T0_; }
    double reference_position() const { return x0_; }
    double slope() const { return slope_; }
    double decay_length() const { return decay_; }

    // True when T'' vanishes identically (constant and linear profiles).
    bool has_constant_gradient() const {
        return kind_ == ProfileKind::constant || kind_ == ProfileKind::linear;
    }

private:
    TemperatureField() = default;
    void check(double x) const;
    void check_positive() const;

    ProfileKind kind_{ProfileKind::constant};
    Domain domain_{};
    double T0_{1.0};
    double x0_{0.0};
    double slope_{0.0};
    double decay_{1.0};
    MonotoneCubic table_;
};

inline double eval(const TemperatureField& f, double x) { return f.eval(x); }
inline double grad(const TemperatureField& f, double x) { return f.grad(x); }
inline double curv(const TemperatureField& f, double x) { return f.curv(x); }

// Phenomenological pressure model behind the thermophoretic coefficient.
struct PressureModel {
    double pressure{1.0};
    double volume{1.0};
    std::optional<double> cross_section;
    std::optional<double> half_size;

    // V = 2 r A
    static PressureModel from_geometry(double pressure, double cross_section, double half_size);
    void validate() const;
};

// kappa = p V / (2 T)
double kappa_from_pressure(const PressureModel& pm, double temperature);

} // namespace thermobath
