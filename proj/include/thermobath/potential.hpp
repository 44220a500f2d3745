// potential.hpp — External potential V(x) acting on the particle

#pragma once

#include <string>
#include <vector>

#include "thermobath/interpolation.hpp"

namespace thermobath {

enum class PotentialKind { none, harmonic, tabulated };

class Potential {
public:
    Potential() = default; // no potential

    static Potential none() { return {}; }
    // V = 1/2 M omega0^2 x^2
    static Potential harmonic(double mass, double omega0);
    static Potential tabulated(std::vector<double> x, std::vector<double> V);
    static Potential from_csv(const std::string& path);

    double value(double x) const;
    double derivative(double x) const;  // V'(x)
    double curvature(double x) const;   // V''(x)

    PotentialKind kind() const { return kind_; }
    double stiffness() const { return stiffness_; }

private:
    PotentialKind kind_{PotentialKind::none};
    double stiffness_{0.0};
    MonotoneCubic table_;
};

} // namespace thermobath
