// analysis.hpp — Histograms, fits, Soret estimates, autocovariances

#pragma once

#include <optional>

#include <Eigen/Core>

#include "thermobath/fokker_planck.hpp"
#include "thermobath/temperature_field.hpp"

namespace thermobath {

struct TrajectoryEnsemble;

struct FitResult {
    double estimate{0.0};
    double standard_error{0.0};
    double residual_norm{0.0};
    double window_lo{0.0};
    double window_hi{0.0};
};

struct HistogramOptions {
    double t_select{0.0};        // snapshot time (ignored when pooling)
    bool pool_stationary{false}; // pool the trailing window instead
    double pool_fraction{0.2};
    double subsample_interval{0.0};
};

// Normalized histogram of ensemble positions on the ensemble box.
DensityProfile histogram(const TrajectoryEnsemble& ensemble, Eigen::Index n_bins, const HistogramOptions& opts);
DensityProfile histogram(const Eigen::Ref<const Eigen::ArrayXd>& samples, const Grid& grid);

// Least-squares line through (x, ln P) over bins whose centres lie in
// [lo, hi], dropping `wall_bins` bins at each wall.
FitResult fit_log_slope(const DensityProfile& profile, double lo, double hi, int wall_bins = 2);
FitResult fit_log_slope(const DensityProfile& profile, int wall_bins = 2);

struct SoretEstimate {
    Eigen::ArrayXd x;
    Eigen::ArrayXd s_hat;    // -P'/(T' P)
    Eigen::ArrayXd s_theory; // 1/T
    Eigen::ArrayXd ratio;    // s_hat * T
    double central_mean_ratio{0.0}; // mean ratio over |x - mid| <= width/4
};

// Centred differences on interior cells only.
SoretEstimate estimate_soret(const DensityProfile& profile, const TemperatureField& field);

// Biased estimator C(l) = (1/N) sum (f_t - m)(f_{t+l} - m), m = sample mean
// unless given.
Eigen::ArrayXd autocovariance(const Eigen::Ref<const Eigen::ArrayXd>& series, Eigen::Index max_lag,
                              std::optional<double> mean = std::nullopt);

// Two-sided integral dt (C(0) + 2 sum_{l>0} C(l)); equals 2D for a force
// with <F F'> = 2 D delta.
double noise_integral(const Eigen::Ref<const Eigen::ArrayXd>& cov, double dt);

// sum |a - b| dx
double density_distance(const DensityProfile& a, const DensityProfile& b);

// Fits v(t) - asymptote = A exp(-rate t) on [lo, hi] by log-linear least squares.
FitResult fit_relaxation_rate(const Eigen::Ref<const Eigen::ArrayXd>& t, const Eigen::Ref<const Eigen::ArrayXd>& v,
                              double lo, double hi, double asymptote = 0.0);

// Pooled statistics of clamped-force records (rows = realizations): grand
// mean with its standard error from per-realization means, and the
// realization-averaged autocovariance about the grand mean.
struct ForceStatistics {
    double mean{0.0};
    double mean_stderr{0.0};
    Eigen::ArrayXd covariance;
    double lag_dt{0.0};
    double integral{0.0};
};

ForceStatistics force_statistics(const Eigen::Ref<const Eigen::ArrayXXd>& force, double dt, double window);

} // namespace thermobath
