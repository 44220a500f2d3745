#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "thermobath/analysis.hpp"
#include "thermobath/errors.hpp"
#include "thermobath/fokker_planck.hpp"
#include "thermobath/langevin.hpp"

using namespace thermobath;

namespace {

EffectiveParamsI gradient_params(double slope = 0.2) {
    EffectiveParamsI p(TemperatureField::linear(1.0, slope, {-5, 5}, slope > 0 ? -5.0 : 5.0));
    p.kappa = 0.5;
    p.box_length = 10.0;
    return p;
}

DriftDiffusion constant(double a, double D) {
    return {[a](double) { return a; }, [D](double) { return D; }};
}

double moment(const DensityProfile& P, int k) {
    const Eigen::ArrayXd x = P.grid.centers();
    return (P.P * x.pow(k)).sum() * P.grid.dx();
}

EffectiveParamsII exponential_two(double sigma, DiffusionMode mode) {
    const double L = 10.0;
    EffectiveParamsII p(WeightFunction::gaussian(sigma, L), TemperatureField::exponential(1.0, L, {-5, 5}));
    p.eta = L / (std::sqrt(std::numbers::pi) * sigma);
    p.box_length = L;
    p.mode = mode;
    return p;
}

} // namespace

TEST(Grid, Layout) {
    const Grid g = Grid::box(10.0, 4);
    EXPECT_DOUBLE_EQ(g.dx(), 2.5);
    EXPECT_DOUBLE_EQ(g.center(0), -3.75);
    EXPECT_EQ(g.faces().size(), 5);
    EXPECT_DOUBLE_EQ(g.faces()(4), 5.0);
}

TEST(DensityProfile, ConstructorsNormalized) {
    const Grid g = Grid::box(10.0, 200);
    EXPECT_NEAR(uniform_density(g).total_mass(), 1.0, 1e-14);
    const auto G = gaussian_density(g, 1.0, 0.5);
    EXPECT_NEAR(G.total_mass(), 1.0, 1e-14);
    EXPECT_NEAR(moment(G, 1), 1.0, 1e-3);
    const auto coarse = rebin(G, 20);
    EXPECT_NEAR(coarse.total_mass(), 1.0, 1e-14);
    EXPECT_THROW(rebin(G, 30), ParameterError);
}

TEST(Evolve, HeatKernelVariance) {
    const Grid g = Grid::box(20.0, 800);
    const double D = 0.5, t = 2.0, s0 = 0.3;
    const auto P0 = gaussian_density(g, 0.0, s0);
    const auto dd = constant(0.0, D);
    const auto P = evolve(dd, P0, 0.9 * max_stable_dt(dd, g), t);
    const double var = moment(P, 2) - std::pow(moment(P, 1), 2);
    const double var0 = moment(P0, 2);
    EXPECT_NEAR(var - var0, 2 * D * t, 0.01 * 2 * D * t);
}

TEST(Evolve, ModelOneLongTimeMatchesClosedForm) {
    const auto p = gradient_params();
    const Grid g = Grid::box(10.0, 512);
    const auto dd = fpe_coefficients(p);
    const auto P = evolve(dd, uniform_density(g), 0.9 * max_stable_dt(dd, g), 150.0);
    EXPECT_LT((P.P - steady_state_I(p, g).P).abs().maxCoeff(), 1e-3);
}

TEST(Evolve, ModelTwoLocalSlope) {
    const ModelIICoefficients c(exponential_two(0.1, DiffusionMode::local_constant_friction));
    const Grid g = Grid::box(10.0, 512);
    const auto dd = fpe_coefficients(c);
    const auto P = evolve(dd, uniform_density(g), 0.9 * max_stable_dt(dd, g), 150.0);
    EXPECT_NEAR(fit_log_slope(P).estimate, 0.1, 0.001);
}

TEST(Evolve, MassAndPositivity) {
    const Grid g = Grid::box(10.0, 256);
    const auto dd = constant(-3.0, 0.05);
    const auto P0 = gaussian_density(g, 3.0, 0.2);
    for (double t : {0.01, 0.5, 3.0}) {
        for (auto scheme : {FluxScheme::upwind, FluxScheme::exponential_fitting}) {
            const auto P = evolve(dd, P0, 0.9 * max_stable_dt(dd, g, scheme), t, scheme);
            EXPECT_NEAR(P.total_mass(), 1.0, 1e-10);
            EXPECT_GE(P.P.minCoeff(), 0.0);
        }
    }
}

TEST(Evolve, WallFluxesVanish) {
    const Grid g = Grid::box(10.0, 64);
    const auto P = gaussian_density(g, 4.5, 1.0);
    for (auto scheme : {FluxScheme::upwind, FluxScheme::exponential_fitting}) {
        const auto F = face_fluxes(constant(1.0, 0.3), P, scheme);
        EXPECT_EQ(F(0), 0.0);
        EXPECT_EQ(F(64), 0.0);
    }
}

TEST(Evolve, StabilityViolationRejected) {
    const Grid g = Grid::box(10.0, 100);
    const auto dd = constant(0.0, 1.0);
    EXPECT_THROW(evolve(dd, uniform_density(g), 0.5 * g.dx() * g.dx(), 1.0), ParameterError);
}

TEST(Evolve, FirstOrderGridConvergence) {
    const auto p = gradient_params();
    const auto dd = fpe_coefficients(p);
    double err[3];
    int i = 0;
    for (Eigen::Index n : {128, 256, 512}) {
        const Grid g = Grid::box(10.0, n);
        const auto P = evolve(dd, uniform_density(g), 0.9 * max_stable_dt(dd, g), 150.0);
        err[i++] = (P.P - steady_state_numeric(dd, g).P).abs().maxCoeff();
    }
    EXPECT_GT(err[0] / err[1], 1.8);
    EXPECT_GT(err[1] / err[2], 1.8);
}

TEST(SteadyState, Uniform) {
    const Grid g = Grid::box(4.0, 40);
    const auto P = steady_state_numeric(constant(0.0, 2.0), g);
    EXPECT_LT((P.P - 0.25).abs().maxCoeff(), 1e-14);
}

TEST(SteadyState, HarmonicBoltzmannIndependentOfFriction) {
    for (double eta : {0.5, 3.0}) {
        EffectiveParamsI p(TemperatureField::constant(1.5, {-10, 10}));
        p.box_length = 20.0;
        p.eta = eta;
        p.potential = Potential::harmonic(2.0, 1.0);
        const auto P = steady_state_numeric(fpe_coefficients(p), Grid::box(20.0, 2000));
        EXPECT_NEAR(moment(P, 2), 1.5 / 2.0, 1e-4);
    }
}

TEST(SteadyState, ZeroFluxWithExponentialFitting) {
    const ModelIICoefficients c(exponential_two(0.5, DiffusionMode::exact));
    const auto dd = fpe_coefficients(c);
    for (Eigen::Index n : {64, 256, 1024}) {
        const auto P = steady_state_numeric(dd, Grid::box(10.0, n));
        EXPECT_LT(face_fluxes(dd, P, FluxScheme::exponential_fitting).abs().maxCoeff(), 1e-8);
    }
}

TEST(SteadyState, FullModelTwoAgreesWithEvolution) {
    const ModelIICoefficients c(exponential_two(0.5, DiffusionMode::exact));
    const auto dd = fpe_coefficients(c);
    // friction grows as x^2 away from the centre, so the walls relax slowly
    const Grid g = Grid::box(10.0, 128);
    const auto s = FluxScheme::exponential_fitting;
    const auto P = evolve(dd, uniform_density(g), 0.9 * max_stable_dt(dd, g, s), 2400.0, s);
    EXPECT_LT((P.P - steady_state_numeric(dd, g).P).abs().maxCoeff(), 1e-3);
}

TEST(SteadyStateI, Examples) {
    const Grid g = Grid::box(10.0, 500);
    const auto P = steady_state_I(gradient_params(), g);
    EXPECT_NEAR(P.total_mass(), 1.0, 1e-12);
    EXPECT_NEAR(fit_log_slope(P).estimate, -0.1, 1e-12);
    const double span = g.center(g.n - 1) - g.center(0);
    EXPECT_NEAR(P.P(0) / P.P(g.n - 1), std::exp(0.1 * span), 1e-10);
    EXPECT_NEAR(std::exp(0.1 * 10.0), 2.71828, 1e-5);
    // closed-form amplitude: 1/A with A = (2 T0/(kappa T')) sinh(kappa T' L/(2 T0))
    const double A = 2.0 / 0.1 * std::sinh(0.1 * 10.0 / 2);
    EXPECT_NEAR(P.P(250) * A / std::exp(-0.1 * g.center(250)), 1.0, 1e-4);
}

TEST(SteadyStateI, WeakGradientIsUniform) {
    auto p = gradient_params(1e-9);
    const auto P = steady_state_I(p, Grid::box(10.0, 50));
    EXPECT_LT((P.P - 0.1).abs().maxCoeff(), 1e-9);
}

TEST(SteadyStateI, MirrorSymmetry) {
    const Grid g = Grid::box(10.0, 100);
    const auto a = steady_state_I(gradient_params(0.2), g);
    const auto b = steady_state_I(gradient_params(-0.2), g);
    EXPECT_LT((a.P - b.P.reverse()).abs().maxCoeff(), 1e-12);
}

TEST(SteadyStateI, RejectsOutsideItsRegime) {
    EffectiveParamsI p(TemperatureField::exponential(1.0, 10.0, {-5, 5}));
    p.box_length = 10.0;
    EXPECT_THROW(steady_state_I(p, Grid::box(10.0, 10)), ModelValidityError);
    auto q = gradient_params();
    q.potential = Potential::harmonic(1.0, 1.0);
    EXPECT_THROW(steady_state_I(q, Grid::box(10.0, 10)), ModelValidityError);
}

TEST(Soret, Profiles) {
    const Grid g = Grid::box(10.0, 20);
    EXPECT_LT((soret_profile(TemperatureField::constant(2.0, {-5, 5}), g) - 0.5).abs().maxCoeff(), 1e-15);
    const auto T = TemperatureField::exponential(1.0, 10.0, {-5, 5});
    const Eigen::ArrayXd S = soret_profile(T, g);
    for (Eigen::Index j = 0; j < g.n; ++j) EXPECT_NEAR(S(j) * T.grad(g.center(j)), -0.1, 1e-14);
}

TEST(Soret, SteadyStateMatchesSoretTimesGradient) {
    const auto p = exponential_two(0.1, DiffusionMode::local_constant_friction);
    const ModelIICoefficients c(p);
    const Grid g = Grid::box(10.0, 1000);
    const auto P = steady_state_numeric(fpe_coefficients(c), g);
    const Eigen::ArrayXd S = soret_profile(p.field, g);
    for (Eigen::Index j = 1; j + 1 < g.n; j += 37) {
        const double dlog = (std::log(P.P(j + 1)) - std::log(P.P(j - 1))) / (2 * g.dx());
        EXPECT_NEAR(-dlog, S(j) * p.field.grad(g.center(j)), 1e-3);
    }
}
