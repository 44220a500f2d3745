// analysis.cpp — Statistical extraction

#include "thermobath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "thermobath/errors.hpp"
#include "thermobath/langevin.hpp"

namespace thermobath {
namespace {
constexpr const char* kModule = "analysis";

struct LineFit {
    double slope, slope_se, intercept, rss;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto m = static_cast<double>(x.size());
    if (x.size() < 3) throw AnalysisError(kModule, "need at least 3 points for a line fit");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw AnalysisError(kModule, "degenerate abscissae in line fit");
    LineFit f{};
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.rss += r * r;
    }
    f.slope_se = std::sqrt(f.rss / (m - 2.0) / sxx);
    return f;
}
} // namespace

DensityProfile histogram(const Eigen::Ref<const Eigen::ArrayXd>& samples, const Grid& grid) {
    if (samples.size() == 0) throw AnalysisError(kModule, "empty sample selection");
    if (grid.n < 1) throw AnalysisError(kModule, "histogram needs at least one bin");
    DensityProfile d{grid, Eigen::ArrayXd::Zero(grid.n), "histogram"};
    const double inv_dx = 1.0 / grid.dx();
    for (double x : samples) {
        if (!std::isfinite(x)) throw AnalysisError(kModule, "non-finite sample");
        const auto j = static_cast<Eigen::Index>(std::floor((x - grid.lo) * inv_dx));
        d.P(std::clamp<Eigen::Index>(j, 0, grid.n - 1)) += 1.0;
    }
    d.P *= inv_dx / static_cast<double>(samples.size());
    return d;
}

DensityProfile histogram(const TrajectoryEnsemble& e, Eigen::Index n_bins, const HistogramOptions& opts) {
    if (n_bins < 8) throw AnalysisError(kModule, "n_bins must be at least 8");
    if (e.times.size() == 0 || e.n_traj() == 0) throw AnalysisError(kModule, "empty ensemble");
    const Eigen::Index last = e.times.size() - 1;
    const double t_end = e.times(last);

    std::vector<Eigen::Index> cols;
    if (opts.pool_stationary) {
        const double t_start = t_end - opts.pool_fraction * t_end;
        double next = t_end;
        for (Eigen::Index j = last; j >= 0 && e.times(j) >= t_start - 1e-12; --j) {
            if (e.times(j) <= next + 1e-12) {
                cols.push_back(j);
                next = e.times(j) - opts.subsample_interval;
            }
        }
    } else {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j <= last; ++j)
            if (std::abs(e.times(j) - opts.t_select) < std::abs(e.times(best) - opts.t_select)) best = j;
        const double tol = 1e-9 * std::max(1.0, t_end);
        if (std::abs(e.times(best) - opts.t_select) > tol)
            throw AnalysisError(kModule, "t_select " + std::to_string(opts.t_select) + " is not a recorded time");
        cols.push_back(best);
    }
    if (cols.empty()) throw AnalysisError(kModule, "empty sample selection");

    Eigen::ArrayXd pooled(e.n_traj() * static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        pooled.segment(static_cast<Eigen::Index>(c) * e.n_traj(), e.n_traj()) = e.positions.col(cols[c]);
    DensityProfile d = histogram(pooled, Grid::box(e.box_length, n_bins));
    d.model = to_string(e.model);
    return d;
}

FitResult fit_log_slope(const DensityProfile& p, double lo, double hi, int wall_bins) {
    std::vector<double> x, y;
    const Eigen::ArrayXd c = p.grid.centers();
    for (Eigen::Index j = wall_bins; j < p.grid.n - wall_bins; ++j) {
        if (c(j) < lo || c(j) > hi) continue;
        if (!(p.P(j) > 0.0))
            throw AnalysisError(kModule, "non-positive density at x = " + std::to_string(c(j)) + " in fit window");
        x.push_back(c(j));
        y.push_back(std::log(p.P(j)));
    }
    if (x.size() < 3) throw AnalysisError(kModule, "fit window holds fewer than 3 bins");
    const LineFit f = least_squares(x, y);
    return {f.slope, f.slope_se, std::sqrt(f.rss), x.front(), x.back()};
}

FitResult fit_log_slope(const DensityProfile& p, int wall_bins) {
    return fit_log_slope(p, p.grid.lo, p.grid.hi, wall_bins);
}

SoretEstimate estimate_soret(const DensityProfile& p, const TemperatureField& field) {
    const Eigen::Index n = p.grid.n;
    if (n < 3) throw AnalysisError(kModule, "Soret estimate needs at least 3 cells");
    if (!(p.P > 0.0).all()) throw AnalysisError(kModule, "density must be positive for a Soret estimate");
    const Eigen::ArrayXd c = p.grid.centers();
    const Eigen::ArrayXd lp = p.P.log();
    const double dx = p.grid.dx();

    SoretEstimate s;
    s.x = c.segment(1, n - 2);
    s.s_hat.resize(n - 2);
    s.s_theory.resize(n - 2);
    s.ratio.resize(n - 2);
    for (Eigen::Index j = 1; j + 1 < n; ++j) {
        const double dT = field.grad(c(j));
        if (dT == 0.0) throw AnalysisError(kModule, "T' = 0 at x = " + std::to_string(c(j)) + "; Soret undefined");
        const double dlogp = (lp(j + 1) - lp(j - 1)) / (2.0 * dx);
        const double T = field.eval(c(j));
        s.s_hat(j - 1) = -dlogp / dT;
        s.s_theory(j - 1) = 1.0 / T;
        s.ratio(j - 1) = s.s_hat(j - 1) * T;
    }
    const double mid = 0.5 * (p.grid.lo + p.grid.hi);
    const double quarter = 0.25 * (p.grid.hi - p.grid.lo);
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < s.x.size(); ++i) {
        if (std::abs(s.x(i) - mid) <= quarter) {
            sum += s.ratio(i);
            ++count;
        }
    }
    if (count == 0) throw AnalysisError(kModule, "no interior cells in the central half-box");
    s.central_mean_ratio = sum / count;
    return s;
}

Eigen::ArrayXd autocovariance(const Eigen::Ref<const Eigen::ArrayXd>& series, Eigen::Index max_lag,
                              std::optional<double> mean) {
    const Eigen::Index n = series.size();
    if (max_lag < 0) throw ParameterError(kModule, "max_lag must be non-negative");
    if (n < 10 * std::max<Eigen::Index>(max_lag, 1))
        throw ParameterError(kModule, "series length " + std::to_string(n) + " is below 10 x max_lag");
    const double m = mean ? *mean : series.mean();
    const Eigen::ArrayXd d = series - m;
    Eigen::ArrayXd c(max_lag + 1);
    for (Eigen::Index l = 0; l <= max_lag; ++l)
        c(l) = (d.head(n - l) * d.segment(l, n - l)).sum() / static_cast<double>(n);
    return c;
}

double noise_integral(const Eigen::Ref<const Eigen::ArrayXd>& cov, double dt) {
    if (cov.size() == 0) return 0.0;
    return dt * (cov(0) + 2.0 * cov.tail(cov.size() - 1).sum());
}

double density_distance(const DensityProfile& a, const DensityProfile& b) {
    if (!a.grid.same_as(b.grid)) throw AnalysisError(kModule, "density grids differ");
    return (a.P - b.P).abs().sum() * a.grid.dx();
}

FitResult fit_relaxation_rate(const Eigen::Ref<const Eigen::ArrayXd>& t, const Eigen::Ref<const Eigen::ArrayXd>& v,
                              double lo, double hi, double asymptote) {
    if (t.size() != v.size()) throw AnalysisError(kModule, "time and value arrays differ in length");
    std::vector<double> x, y;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        if (t(i) < lo || t(i) > hi) continue;
        const double d = v(i) - asymptote;
        if (!(d > 0.0))
            throw AnalysisError(kModule, "relaxing signal not positive at t = " + std::to_string(t(i)) +
                                             "; residual " + std::to_string(d));
        x.push_back(t(i));
        y.push_back(std::log(d));
    }
    if (x.size() < 3) throw AnalysisError(kModule, "relaxation window holds fewer than 3 samples");
    const LineFit f = least_squares(x, y);
    return {-f.slope, f.slope_se, std::sqrt(f.rss), x.front(), x.back()};
}

ForceStatistics force_statistics(const Eigen::Ref<const Eigen::ArrayXXd>& force, double dt, double window) {
    if (force.size() == 0) throw AnalysisError(kModule, "empty force record");
    ForceStatistics s;
    const double R = static_cast<double>(force.rows());
    s.mean = force.mean();
    const Eigen::ArrayXd per = force.rowwise().mean();
    s.mean_stderr = force.rows() > 1 ? std::sqrt((per - s.mean).square().sum() / (R - 1.0) / R) : 0.0;
    const auto max_lag = static_cast<Eigen::Index>(std::llround(window / dt));
    s.lag_dt = dt;
    s.covariance = Eigen::ArrayXd::Zero(max_lag + 1);
    for (Eigen::Index r = 0; r < force.rows(); ++r)
        s.covariance += autocovariance(force.row(r).transpose(), max_lag, s.mean);
    s.covariance /= R;
    s.integral = noise_integral(s.covariance, dt);
    return s;
}

} // namespace thermobath
