// interpolation.cpp — Monotone cubic Hermite interpolation

#include "thermobath/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "thermobath/errors.hpp"

namespace thermobath {

MonotoneCubic::MonotoneCubic(Eigen::ArrayXd x, Eigen::ArrayXd y)
    : x_(std::move(x)), y_(std::move(y)) {
    const Eigen::Index n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ParameterError("interpolation", "need at least two (x, y) samples of equal length");
    for (Eigen::Index i = 1; i < n; ++i) {
        if (!(x_(i) > x_(i - 1)))
            throw ParameterError("interpolation", "sample abscissae must be strictly increasing");
    }

    // Uniform knots (the common case for tabulated coefficients) get an O(1)
    // interval lookup.
    const double h = (x_(n - 1) - x_(0)) / static_cast<double>(n - 1);
    uniform_ = true;
    for (Eigen::Index i = 1; i < n && uniform_; ++i)
        uniform_ = std::abs(x_(i) - x_(i - 1) - h) <= 1e-12 * h;
    inv_h_ = 1.0 / h;

    Eigen::ArrayXd secant(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        secant(i) = (y_(i + 1) - y_(i)) / (x_(i + 1) - x_(i));

    slope_.resize(n);
    slope_(0) = secant(0);
    slope_(n - 1) = secant(n - 2);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        const double a = secant(i - 1);
        const double b = secant(i);
        if (a * b <= 0.0) {
            slope_(i) = 0.0;
        } else {
            // weighted harmonic mean (Fritsch–Butland)
            const double h0 = x_(i) - x_(i - 1);
            const double h1 = x_(i + 1) - x_(i);
            const double w0 = 2.0 * h1 + h0;
            const double w1 = h1 + 2.0 * h0;
            slope_(i) = (w0 + w1) / (w0 / a + w1 / b);
        }
    }
    // one-sided end slopes must not point against the data
    for (Eigen::Index i : {Eigen::Index{0}, n - 1}) {
        const double s = secant(i == 0 ? 0 : n - 2);
        if (slope_(i) * s < 0.0) slope_(i) = 0.0;
        if (std::abs(slope_(i)) > 3.0 * std::abs(s)) slope_(i) = 3.0 * s;
    }
}

Eigen::Index MonotoneCubic::interval(double x) const {
    if (!(x >= lo() && x <= hi()))
        throw DomainError("interpolation", "x=" + std::to_string(x) + " outside [" +
                                               std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
    if (uniform_) {
        auto i = static_cast<Eigen::Index>((x - x_(0)) * inv_h_);
        i = std::clamp<Eigen::Index>(i, 0, x_.size() - 2);
        // rounding can land one interval off near a knot
        if (x < x_(i)) --i;
        else if (i + 2 < x_.size() && x >= x_(i + 1)) ++i;
        return i;
    }
    const auto* begin = x_.data();
    const auto* end = x_.data() + x_.size();
    auto it = std::upper_bound(begin, end, x);
    Eigen::Index i = static_cast<Eigen::Index>(it - begin) - 1;
    return std::clamp<Eigen::Index>(i, 0, x_.size() - 2);
}

double MonotoneCubic::value(double x) const {
    const Eigen::Index i = interval(x);
    const double h = x_(i + 1) - x_(i);
    const double t = (x - x_(i)) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_(i) + (t3 - 2 * t2 + t) * h * slope_(i) +
           (-2 * t3 + 3 * t2) * y_(i + 1) + (t3 - t2) * h * slope_(i + 1);
}

double MonotoneCubic::derivative(double x) const {
    const Eigen::Index i = interval(x);
    const double h = x_(i + 1) - x_(i);
    const double t = (x - x_(i)) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y_(i) + (-6 * t2 + 6 * t) * y_(i + 1)) / h +
           (3 * t2 - 4 * t + 1) * slope_(i) + (3 * t2 - 2 * t) * slope_(i + 1);
}

double MonotoneCubic::second_derivative(double x) const {
    const Eigen::Index i = interval(x);
    const double h = x_(i + 1) - x_(i);
    const double t = (x - x_(i)) / h;
    return ((12 * t - 6) * y_(i) + (-12 * t + 6) * y_(i + 1)) / (h * h) +
           ((6 * t - 4) * slope_(i) + (6 * t - 2) * slope_(i + 1)) / h;
}

} // namespace thermobath
