// quadrature.hpp — Globally adaptive Gauss–Kronrod (7/15) integration

#pragma once

#include <functional>
#include <span>

namespace thermobath {

struct QuadratureOptions {
    double abs_tol{1e-10};
    double rel_tol{1e-12};
    int max_subdivisions{4000};
};

struct QuadratureResult {
    double value{0.0};
    double error{0.0};       // estimated absolute error
    int evaluations{0};
    int subdivisions{0};
};

using Integrand = std::function<double(double)>;

// Integrate over [a, b]. Throws NumericalError (with the reached error
// estimate in the message) when the tolerance cannot be met.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts = {});

// Same, with the interval pre-split at the given sorted breakpoints
// (first and last entries are the integration limits).
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opts = {});

// Integrate over [a, inf) via x = a + t/(1-t).
QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureOptions& opts = {});

} // namespace thermobath
