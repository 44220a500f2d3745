// quadrature.cpp — Globally adaptive Gauss–Kronrod (7/15) integration

#include "thermobath/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "thermobath/errors.hpp"

namespace thermobath {
namespace {

// Kronrod 15-point abscissae (positive half) and weights; Gauss 7 weights
// belong to the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const Integrand& f, double a, double b, int& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXk[j];
        const double s = f(c - dx) + f(c + dx);
        kronrod += kWk[j] * s;
        if (j % 2 == 1) gauss += kWg[j / 2] * s;
    }
    evals += 15;
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opts) {
    if (breakpoints.size() < 2)
        throw ParameterError("quadrature", "need at least the two integration limits");

    QuadratureResult result;
    std::priority_queue<Segment> heap;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] == breakpoints[i]) continue;
        Segment s = gauss_kronrod(f, breakpoints[i], breakpoints[i + 1], result.evaluations);
        total += s.value;
        total_error += s.error;
        heap.push(s);
    }

    while (total_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (result.subdivisions >= opts.max_subdivisions || heap.empty()) {
            std::ostringstream msg;
            msg << "no convergence after " << result.subdivisions << " subdivisions: value=" << total
                << " error estimate=" << total_error << " (abs_tol=" << opts.abs_tol << ")";
            throw NumericalError("quadrature", msg.str());
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gauss_kronrod(f, worst.a, mid, result.evaluations);
        Segment right = gauss_kronrod(f, mid, worst.b, result.evaluations);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++result.subdivisions;

        // Rebuild the running sums now and then to stop drift from
        // accumulated cancellation.
        if (result.subdivisions % 256 == 0) {
            auto copy = heap;
            total = 0.0;
            total_error = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_error += copy.top().error;
                copy.pop();
            }
        }
    }

    result.value = total;
    result.error = total_error;
    return result;
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
    const std::array<double, 2> limits{a, b};
    return integrate(f, limits, opts);
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureOptions& opts) {
    auto mapped = [&](double t) {
        const double one_minus = 1.0 - t;
        const double x = a + t / one_minus;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

} // namespace thermobath
