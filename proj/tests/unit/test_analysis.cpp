#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "thermobath/analysis.hpp"
#include "thermobath/errors.hpp"
#include "thermobath/langevin.hpp"

using namespace thermobath;

namespace {

DensityProfile from_function(const Grid& g, const std::function<double(double)>& f) {
    DensityProfile d{g, Eigen::ArrayXd(g.n), "test"};
    for (Eigen::Index j = 0; j < g.n; ++j) d.P(j) = f(g.center(j));
    d.normalize();
    return d;
}

Eigen::ArrayXd white(std::size_t n, unsigned seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> N;
    Eigen::ArrayXd x(n);
    for (auto& v : x) v = N(eng);
    return x;
}

} // namespace

TEST(Histogram, DeltaLike) {
    const Eigen::ArrayXd x = Eigen::ArrayXd::Zero(1000);
    const auto h = histogram(x, Grid::box(10.0, 9));
    EXPECT_NEAR(h.P(4) * h.grid.dx(), 1.0, 1e-15);
    EXPECT_EQ((h.P > 0).count(), 1);
}

TEST(Histogram, UniformSamples) {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    Eigen::ArrayXd x(1000000);
    for (auto& v : x) v = U(eng);
    const auto h = histogram(x, Grid::box(10.0, 32));
    const double p = 1.0 / 32, sd = std::sqrt(p * (1 - p) / 1e6) / h.grid.dx();
    for (Eigen::Index j = 0; j < 32; ++j) EXPECT_NEAR(h.P(j), 0.1, 3 * sd) << j;
}

TEST(Histogram, EmptySelectionRejected) {
    EXPECT_THROW(histogram(Eigen::ArrayXd(0), Grid::box(10.0, 10)), AnalysisError);
    TrajectoryEnsemble e;
    e.box_length = 10.0;
    e.times = Eigen::ArrayXd::LinSpaced(3, 0.0, 2.0);
    e.positions = Eigen::ArrayXXd::Zero(4, 3);
    HistogramOptions o;
    o.t_select = 7.0;
    EXPECT_THROW(histogram(e, 10, o), AnalysisError);
    o.t_select = 1.0;
    EXPECT_NO_THROW(histogram(e, 10, o));
}

TEST(Histogram, PooledModelOneMatchesClosedForm) {
    EffectiveParamsI p(TemperatureField::linear(1.0, 0.2, {-5, 5}, -5.0));
    p.kappa = 0.5;
    p.box_length = 10.0;
    // 5000 trajectories x 20 pooled samples = 1e5 samples
    const EnsembleOptions o{5000, 0.01, 200.0, 2.0, InitialPlacement::uniform, 0.0, 17, 0};
    const auto e = run_ensemble(p, LangevinModel::overdamped1, o);
    HistogramOptions h;
    h.pool_stationary = true;
    h.subsample_interval = 2.0;
    const auto hist = histogram(e, 40, h);
    EXPECT_LT(density_distance(hist, steady_state_I(p, hist.grid)), 0.05);
}

TEST(FitLogSlope, Noiseless) {
    const auto d = from_function(Grid::box(10.0, 50), [](double x) { return std::exp(-0.1 * x); });
    const FitResult f = fit_log_slope(d);
    EXPECT_NEAR(f.estimate, -0.1, 1e-12);
    EXPECT_LT(f.standard_error, 1e-12);
    EXPECT_NEAR(f.window_lo, d.grid.center(2), 1e-12);
}

TEST(FitLogSlope, ScaleInvariant) {
    auto d = from_function(Grid::box(10.0, 50), [](double x) { return 1.0 + 0.3 * std::sin(x) + 0.05 * x; });
    const double s = fit_log_slope(d).estimate;
    d.P *= 37.5;
    EXPECT_NEAR(fit_log_slope(d).estimate, s, 1e-14);
}

TEST(FitLogSlope, NonPositiveRejected) {
    auto d = from_function(Grid::box(10.0, 20), [](double) { return 1.0; });
    d.P(10) = 0.0;
    EXPECT_THROW(fit_log_slope(d), AnalysisError);
    EXPECT_NO_THROW(fit_log_slope(d, -5.0, -1.0));
}

TEST(Soret, NoiselessExponential) {
    const double L = 10.0;
    const auto d = from_function(Grid::box(L, 40), [&](double x) { return std::exp(x / L); });
    const auto s = estimate_soret(d, TemperatureField::exponential(1.0, L, {-5, 5}));
    EXPECT_LT((s.ratio - 1.0).abs().maxCoeff(), 1e-6);
    EXPECT_NEAR(s.central_mean_ratio, 1.0, 1e-6);
}

TEST(Soret, ModelOneIsConstant) {
    EffectiveParamsI p(TemperatureField::linear(1.0, 0.2, {-5, 5}, -5.0));
    p.kappa = 0.5;
    p.box_length = 10.0;
    const auto d = steady_state_I(p, Grid::box(10.0, 100));
    const auto s = estimate_soret(d, p.field);
    // S_T = kappa/T0 everywhere, not 1/T(x)
    EXPECT_LT((s.s_hat - 0.5).abs().maxCoeff(), 1e-9);
    EXPECT_GT((s.ratio - 1.0).abs().maxCoeff(), 0.4);
}

TEST(Soret, NeedsGradient) {
    const auto d = from_function(Grid::box(10.0, 20), [](double) { return 1.0; });
    EXPECT_THROW(estimate_soret(d, TemperatureField::constant(1.0, {-5, 5})), AnalysisError);
}

TEST(Soret, SecondOrderOnNumericSteadyState) {
    const auto T = TemperatureField::exponential(1.0, 4.0, {-5, 5});
    const DriftDiffusion dd{[](double x) { return -0.3 * x; }, [&](double x) { return T.eval(x); }};
    double err[2];
    int i = 0;
    for (Eigen::Index n : {100, 200}) {
        const Grid g = Grid::box(10.0, n);
        const auto s = estimate_soret(steady_state_numeric(dd, g), T);
        double worst = 0.0, scale = 0.0;
        for (Eigen::Index j = 0; j < s.x.size(); ++j) {
            const double x = s.x(j);
            // -P'/P = (D' - a)/D for P ~ exp(int a/D)/D, here D = T
            const double expect = (T.grad(x) - dd.drift(x)) / (T.eval(x) * T.grad(x));
            worst = std::max(worst, std::abs(s.s_hat(j) - expect));
            scale = std::max(scale, std::abs(expect));
        }
        err[i++] = worst / scale;
    }
    EXPECT_GT(err[0] / err[1], 3.5);
    EXPECT_LT(err[1], 1e-3);
}

TEST(Autocovariance, WhiteNoise) {
    const auto x = white(100000, 5);
    const auto C = autocovariance(x, 50);
    EXPECT_NEAR(C(0), 1.0, 0.05);
    const double sd = 1.0 / std::sqrt(1e5);
    for (Eigen::Index l = 1; l <= 50; ++l) EXPECT_LT(std::abs(C(l)), 3.5 * sd) << l;
    const double dt = 0.1;
    // two-sided integral of an iid sequence is its variance times dt
    const double var = (x - x.mean()).square().mean();
    EXPECT_NEAR(noise_integral(C, dt), var * dt, 3 * std::sqrt(1.0 + 4 * 50) * sd * dt);
}

TEST(Autocovariance, LengthPrecondition) {
    EXPECT_THROW(autocovariance(Eigen::ArrayXd::Ones(99), 10), ParameterError);
    EXPECT_NO_THROW(autocovariance(Eigen::ArrayXd::Ones(100), 10));
}

TEST(Autocovariance, ForceStatisticsOnAR1) {
    // x' = phi x + e: sum over all lags of the covariance is 1/(1 - phi)^2
    const double phi = 0.8;
    std::mt19937_64 eng(7);
    std::normal_distribution<double> N;
    Eigen::ArrayXXd f(200, 2000);
    for (Eigen::Index r = 0; r < f.rows(); ++r) {
        double v = N(eng) / std::sqrt(1 - phi * phi);
        for (Eigen::Index t = 0; t < f.cols(); ++t) {
            f(r, t) = 3.0 + v;
            v = phi * v + N(eng);
        }
    }
    const auto st = force_statistics(f, 0.01, 0.5);
    EXPECT_NEAR(st.mean, 3.0, 4 * st.mean_stderr);
    EXPECT_NEAR(st.integral, 0.01 / std::pow(1 - phi, 2), 0.05 * 0.01 / std::pow(1 - phi, 2));
}

TEST(DensityDistance, Examples) {
    const Grid g = Grid::box(10.0, 1000);
    const auto u = uniform_density(g);
    EXPECT_EQ(density_distance(u, u), 0.0);
    DensityProfile a{g, Eigen::ArrayXd::Zero(g.n), ""}, b = a;
    a.P.head(500).setConstant(0.2);
    b.P.tail(500).setConstant(0.2);
    EXPECT_NEAR(density_distance(a, b), 2.0, 1e-12);

    const double A = 20.0 * std::sinh(0.5);
    const auto e = from_function(g, [](double x) { return std::exp(-0.1 * x); });
    boost::math::quadrature::gauss_kronrod<double, 31> gk;
    const double xs = -10.0 * std::log(A / 10.0);
    auto f = [&](double x) { return std::abs(0.1 - std::exp(-0.1 * x) / A); };
    const double ref = gk.integrate(f, -5.0, xs, 10, 1e-14) + gk.integrate(f, xs, 5.0, 10, 1e-14);
    EXPECT_NEAR(ref, 0.246603, 1e-6);
    EXPECT_NEAR(density_distance(u, e), ref, 1e-5);

    EXPECT_THROW(density_distance(u, uniform_density(Grid::box(10.0, 10))), AnalysisError);
}

TEST(Relaxation, ExactExponential) {
    const Eigen::ArrayXd t = Eigen::ArrayXd::LinSpaced(200, 0.0, 2.0);
    const Eigen::ArrayXd v = 0.7 + 2.0 * (-1.3 * t).exp();
    const FitResult f = fit_relaxation_rate(t, v, 0.1, 1.5, 0.7);
    EXPECT_NEAR(f.estimate, 1.3, 1e-10);
}
