#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <gtest/gtest.h>

#include "thermobath/errors.hpp"
#include "thermobath/spectral.hpp"

using namespace thermobath;
using std::numbers::pi;

namespace {

// K(tau) = (2/pi) int_0^inf J(w)/w cos(w tau) dw, evaluated with boost only.
double kernel_oracle(const SpectralModel& m, double tau) {
    auto f = [&](double w) { return spectral_density(m, w) / w; };
    if (tau == 0.0) {
        boost::math::quadrature::exp_sinh<double> es;
        return 2.0 / pi * es.integrate(f, 1e-15);
    }
    boost::math::quadrature::ooura_fourier_cos<double> oc;
    return 2.0 / pi * oc.integrate(f, tau).first;
}

} // namespace

TEST(Spectral, ModelValidation) {
    EXPECT_THROW(SpectralModel::ohmic(-1.0, 10.0).validate(), ParameterError);
    EXPECT_THROW(SpectralModel::ohmic(1.0, 0.0).validate(), ParameterError);
    EXPECT_THROW(SpectralModel::power_law(1.0, 0.0, 10.0).validate(), ParameterError);
    SpectralModel bad = SpectralModel::ohmic(1.0, 10.0);
    bad.exponent = 2.0;
    EXPECT_THROW(bad.validate(), ParameterError);
}

TEST(Spectral, KernelExamples) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    EXPECT_NEAR(kernel(m, 0.0), 2 * 10 / pi, 1e-12);
    EXPECT_NEAR(kernel(m, 0.0), 6.3662, 1e-4);
    EXPECT_NEAR(kernel(m, 1.0), 0.063031, 1e-6);
    EXPECT_NEAR(kernel(m, 0.0), kernel_oracle(m, 0.0), 1e-10);
}

TEST(Spectral, ClosedFormMatchesBoostOracle) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    for (int i = 0; i < 20; ++i) {
        const double tau = 0.01 + 0.1 * i;
        const double ref = kernel_oracle(m, tau);
        EXPECT_NEAR(kernel(m, tau), ref, 1e-8 * std::abs(ref)) << tau;
    }
}

TEST(Spectral, LibraryQuadratureMatchesClosedForm) {
    const auto m = SpectralModel::ohmic(1.3, 7.0);
    for (double tau : {0.0, 0.02, 0.3, 1.0, 4.0}) {
        const double K = kernel(m, tau);
        EXPECT_NEAR(kernel_by_quadrature(m, tau).value, K, 1e-8 * K) << tau;
    }
}

TEST(Spectral, PowerLawKernelAgainstOracle) {
    for (double s : {0.5, 2.0}) {
        const auto m = SpectralModel::power_law(1.0, s, 5.0);
        for (double tau : {0.0, 0.1, 0.7}) {
            const double ref = kernel_oracle(m, tau);
            EXPECT_NEAR(kernel(m, tau), ref, 1e-7 * std::abs(ref) + 1e-10) << "s=" << s << " tau=" << tau;
        }
    }
}

TEST(Spectral, KernelIsEven) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    for (double tau : {0.01, 0.3, 2.0}) EXPECT_DOUBLE_EQ(kernel(m, tau), kernel(m, -tau));
    const auto p = SpectralModel::power_law(1.0, 2.0, 3.0);
    EXPECT_DOUBLE_EQ(kernel(p, 0.4), kernel(p, -0.4));
}

TEST(Spectral, SumRuleAndDeltaLimit) {
    boost::math::quadrature::exp_sinh<double> es;
    double previous = 1e300;
    for (double wc : {10.0, 100.0, 1000.0}) {
        const auto m = SpectralModel::ohmic(1.0, wc);
        const double I = es.integrate([&](double t) { return kernel(m, t); }, 1e-14);
        EXPECT_NEAR(I, 1.0, 1e-6) << wc;
        EXPECT_LT(kernel(m, 0.5), previous);
        previous = kernel(m, 0.5);
    }
}

TEST(Spectral, DiscretizeSingleMode) {
    const auto s = discretize(SpectralModel::ohmic(1.0, 1e6), 1, 1.0);
    ASSERT_EQ(s.count(), 1);
    EXPECT_DOUBLE_EQ(s.omega(0), 0.5);
    // cutoff far away: J(0.5) = 0.5 up to exp(-0.5e-6)
    EXPECT_NEAR(s.coupling(0), std::sqrt(2 / pi * 0.5 * 0.5 * 1.0), 1e-6);
    EXPECT_NEAR(s.coupling(0), 0.39894, 1e-5);
    EXPECT_DOUBLE_EQ(s.mass(0), 1.0);
}

TEST(Spectral, DiscretizeReconstructsDensityOnGrid) {
    const auto m = SpectralModel::ohmic(2.0, 10.0);
    const auto s = discretize(m, 200, 100.0);
    for (Eigen::Index k = 0; k < s.count(); k += 17) {
        const double J = pi / 2 * s.coupling(k) * s.coupling(k) / (s.mass(k) * s.omega(k)) / s.spacing;
        EXPECT_NEAR(J, spectral_density(m, s.omega(k)), 1e-12 * J);
    }
}

TEST(Spectral, CountertermSumEqualsKernelAtZero) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    const auto s = discretize(m, 4000, 50 * m.cutoff);
    EXPECT_NEAR(counterterm_stiffness(s), kernel_oracle(m, 0.0), 0.01 * kernel_oracle(m, 0.0));
}

TEST(Spectral, ReconstructionWithinTwoPercent) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    const auto s = discretize(m, 4000, 50 * m.cutoff);
    for (int i = 0; i <= 50; ++i) {
        const double tau = 0.1 * i / m.cutoff;
        EXPECT_LT(std::abs(reconstructed_kernel(s, tau) / kernel(m, tau) - 1.0), 0.02) << tau;
    }
}

TEST(Spectral, ReconstructionConvergesWithN) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    double previous = 1e300;
    for (long N : {500, 1000, 2000, 4000}) {
        const auto s = discretize(m, N, 50 * m.cutoff);
        double worst = 0.0;
        for (int i = 0; i <= 50; ++i) {
            const double tau = 0.1 * i / m.cutoff;
            worst = std::max(worst, std::abs(reconstructed_kernel(s, tau) / kernel(m, tau) - 1.0));
        }
        EXPECT_LT(worst, previous) << N;
        previous = worst;
    }
}

TEST(Spectral, KappaFromBath) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    const auto s = discretize(m, 4000, 50 * m.cutoff);
    EXPECT_EQ(kappa_from_bath(s, 0.0), 0.0);

    DiscreteBathSpec one;
    one.omega = Eigen::ArrayXd::Constant(1, 1.0);
    one.coupling = Eigen::ArrayXd::Constant(1, 2.0);
    one.mass = Eigen::ArrayXd::Constant(1, 1.0);
    one.spacing = 1.0;
    EXPECT_DOUBLE_EQ(kappa_from_bath(one, 0.25), 1.0);
}

TEST(Spectral, AlphaClosureRecoversKappaTarget) {
    const auto m = SpectralModel::ohmic(1.0, 100.0);
    const auto s = discretize(m, 4000, 50 * m.cutoff);
    // continuum closure applied to the discrete bath: discretization error only
    EXPECT_NEAR(kappa_from_bath(s, alpha_tilde_for_kappa(m, 0.5)), 0.5, 0.005);
    EXPECT_NEAR(kappa_from_bath(s, alpha_tilde_for_kappa(s, 0.5)), 0.5, 1e-12);
}

TEST(Spectral, DiscretizeRejectsBadInput) {
    const auto m = SpectralModel::ohmic(1.0, 10.0);
    EXPECT_THROW(discretize(m, 0, 10.0), ParameterError);
    EXPECT_THROW(discretize(m, 10, -1.0), ParameterError);
}

TEST(Spectral, RecurrenceTime) {
    const auto s = discretize(SpectralModel::ohmic(1.0, 10.0), 1000, 100.0);
    EXPECT_NEAR(s.recurrence_time(), 2 * pi / 0.1, 1e-9);
    EXPECT_DOUBLE_EQ(s.max_frequency(), 99.95);
}
