// interpolation.hpp — Shape-preserving (monotone) cubic Hermite interpolation

#pragma once

#include <Eigen/Core>

namespace thermobath {

// Fritsch–Carlson monotone cubic. Never overshoots the sample range between
// knots, so positive samples give a positive interpolant. C1 continuous;
// the second derivative is piecewise linear and may jump at knots.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(Eigen::ArrayXd x, Eigen::ArrayXd y);

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    double lo() const { return x_(0); }
    double hi() const { return x_(x_.size() - 1); }
    const Eigen::ArrayXd& knots() const { return x_; }
    const Eigen::ArrayXd& samples() const { return y_; }

private:
    Eigen::Index interval(double x) const;

    Eigen::ArrayXd x_;
    Eigen::ArrayXd y_;
    Eigen::ArrayXd slope_; // Hermite derivative at each knot
    bool uniform_{false};
    double inv_h_{0.0};
};

} // namespace thermobath
