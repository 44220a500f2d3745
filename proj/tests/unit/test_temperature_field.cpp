#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "thermobath/errors.hpp"
#include "thermobath/temperature_field.hpp"

using namespace thermobath;

namespace {

std::vector<TemperatureField> all_profiles() {
    std::vector<double> x, T;
    for (int i = 0; i <= 40; ++i) {
        x.push_back(-2.0 + 0.1 * i);
        T.push_back(1.5 + 0.3 * std::sin(x.back()));
    }
    return {TemperatureField::constant(1.3, {-2, 2}), TemperatureField::linear(1.0, 0.1, {-2, 2}),
            TemperatureField::exponential(2.0, 1.0, {-2, 2}), TemperatureField::tabulated(x, T)};
}

} // namespace

TEST(TemperatureField, Examples) {
    EXPECT_DOUBLE_EQ(TemperatureField::constant(1.0, {-1, 1}).eval(0.3), 1.0);
    EXPECT_NEAR(TemperatureField::linear(1.0, 0.1, {-5, 5}).eval(2.0), 1.2, 1e-15);
    EXPECT_NEAR(TemperatureField::exponential(2.0, 1.0, {-5, 5}).eval(1.0), 2.0 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(2.0 * std::exp(-1.0), 0.73576, 1e-5);
}

TEST(TemperatureField, Derivatives) {
    const auto lin = TemperatureField::linear(1.0, 0.1, {-5, 5});
    for (double x : {-4.0, 0.0, 3.3}) {
        EXPECT_DOUBLE_EQ(lin.grad(x), 0.1);
        EXPECT_EQ(lin.curv(x), 0.0);
    }
    const auto ex = TemperatureField::exponential(2.0, 1.0, {-5, 5});
    EXPECT_NEAR(ex.grad(0.0), -2.0, 1e-14);
    EXPECT_NEAR(ex.curv(0.0), 2.0, 1e-14);
}

TEST(TemperatureField, TabulatedLinearGenerator) {
    std::vector<double> x, T;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(-1.0 + 0.1 * i);
        T.push_back(1.0 + 0.1 * x.back());
    }
    const auto f = TemperatureField::tabulated(x, T);
    EXPECT_NEAR(f.grad(0.0), 0.1, 1e-6);
    EXPECT_NEAR(f.eval(0.05), 1.005, 1e-12);
}

TEST(TemperatureField, OutOfDomainThrows) {
    for (const auto& f : all_profiles()) {
        EXPECT_THROW(f.eval(2.5), DomainError);
        EXPECT_THROW(f.grad(-2.01), DomainError);
        EXPECT_THROW(f.curv(3.0), DomainError);
    }
}

TEST(TemperatureField, RejectsNonPositiveTemperature) {
    EXPECT_THROW(TemperatureField::linear(1.0, 0.2, {-10, 10}), Error);
    EXPECT_THROW(TemperatureField::constant(0.0, {-1, 1}), Error);
    EXPECT_THROW(TemperatureField::tabulated({0.0, 1.0}, {1.0, -1.0}), Error);
}

TEST(TemperatureField, PositivityEverywhere) {
    for (const auto& f : all_profiles())
        for (int i = 0; i <= 400; ++i) EXPECT_GT(f.eval(-2.0 + 0.01 * i), 0.0);
}

TEST(TemperatureField, FiniteDifferenceConsistency) {
    for (const auto& f : all_profiles()) {
        const double h = 1e-4 * f.domain().width();
        for (double x : {-1.37, -0.23, 0.61, 1.53}) { // off the table knots
            const double d1 = (f.eval(x + h) - f.eval(x - h)) / (2 * h);
            const double scale = std::max(std::abs(f.grad(x)), 1.0);
            EXPECT_NEAR(d1, f.grad(x), 1e-5 * scale) << to_string(f.kind()) << " x=" << x;
            if (f.kind() == ProfileKind::tabulated) continue; // T'' of a C1 interpolant jumps at knots
            const double d2 = (f.eval(x + h) - 2 * f.eval(x) + f.eval(x - h)) / (h * h);
            EXPECT_NEAR(d2, f.curv(x), 1e-5 * std::max(std::abs(f.curv(x)), 1.0)) << to_string(f.kind());
        }
    }
}

TEST(TemperatureField, TabulatedCurvatureMatchesInterpolantSecondDifference) {
    const auto f = all_profiles().back();
    const double h = 1e-4;
    // away from knots the interpolant is a cubic, so the difference is exact to O(h^2)
    for (double x : {-1.35, 0.25, 1.05}) {
        const double d2 = (f.eval(x + h) - 2 * f.eval(x) + f.eval(x - h)) / (h * h);
        EXPECT_NEAR(d2, f.curv(x), 1e-4);
    }
}

TEST(PressureModel, KappaExamples) {
    auto pm = [](double p, double V) {
        PressureModel m;
        m.pressure = p;
        m.volume = V;
        return m;
    };
    EXPECT_DOUBLE_EQ(kappa_from_pressure(pm(1.0, 1.0), 1.0), 0.5);
    EXPECT_DOUBLE_EQ(kappa_from_pressure(pm(2.0, 0.5), 4.0), 0.125);
    EXPECT_THROW(kappa_from_pressure(pm(1.0, 1.0), 0.0), ParameterError);
    EXPECT_THROW(kappa_from_pressure(pm(1.0, 1.0), -1.0), ParameterError);
}

TEST(PressureModel, GeometryVolume) {
    const auto pm = PressureModel::from_geometry(2.0, 0.5, 0.25);
    EXPECT_DOUBLE_EQ(pm.volume, 2 * 0.25 * 0.5);
}
