#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "okun/error.hpp"
#include "okun/format.hpp"
#include "okun/ingest.hpp"
#include "okun/model.hpp"
#include "okun/series.hpp"

namespace okun {

/// Coefficients counted in the standard error's degrees of freedom: slope and
/// trend for each segment. Anchors are data (segment 1) or derived (segment 2).
inline constexpr std::size_t kModelParams = 4;

/// Scaled determinant det / (S11 * S22) below which the normal matrix is singular.
inline constexpr double kSingularTolerance = 1e-12;

struct FitConfig {
    YearRange break_grid{1975, 1995};
    std::vector<int> lag_candidates{0, 1};
    std::size_t min_segment_obs = 5;
    RateKind target = RateKind::Unemployment;

    void validate() const {
        if (break_grid.empty()) throw ConfigurationError("break grid is empty");
        if (lag_candidates.empty()) throw ConfigurationError("no lag candidates");
        for (int k : lag_candidates)
            if (k < 0) throw ConfigurationError("negative lag " + std::to_string(k));
        if (min_segment_obs < 3) throw ConfigurationError("min_segment_obs must be at least 3");
    }
};

/// One (break year, lag) candidate of the grid search.
struct GridPoint {
    Year break_year;
    int lag;
    std::optional<double> sse;  ///< empty when the candidate was inadmissible
    std::string failure;
};

struct FitStats {
    double r_squared;
    double std_error;
    double sse;
    AnnualSeries residuals;
};

struct FitReport {
    SegmentedModel model;
    double r_squared;
    double std_error;
    double sse;
    AnnualSeries residuals;  ///< measured - predicted over the fit window
    AnnualSeries measured;   ///< level-shift adjusted
    AnnualSeries predicted;
    std::map<Year, double> sse_by_break;  ///< best SSE over lags per break year
    std::vector<GridPoint> grid;
    std::size_t n_obs;
    std::vector<std::string> warnings;

    [[nodiscard]] YearRange window() const noexcept { return measured.years(); }
};

/**
 * @brief Least squares through the anchor for one segment.
 *
 * Regresses (y_t - anchor_value) on x1 = 100 ln(G_{t-lag} / G_{anchor_year-lag})
 * and x2 = t - anchor_year over `window`, with no intercept, by solving the
 * 2x2 normal equations in closed form.
 *
 * @throws InsufficientDataError if the window holds fewer than `min_obs` years
 * @throws RankDeficiencyError if the regressors are (numerically) collinear
 * @throws AlignmentError if y or g do not cover the window
 */
[[nodiscard]] inline Segment fit_segment(const AnnualSeries& y, const AnnualSeries& g, Year anchor_year,
                                         double anchor_value, int lag, YearRange window, std::size_t min_obs = 3) {
    if (window.size() < min_obs)
        throw InsufficientDataError("segment " + std::to_string(window.first) + "-" + std::to_string(window.last) +
                                    " has " + std::to_string(window.size()) + " observations, need " +
                                    std::to_string(min_obs));
    if (!y.years().contains(window))
        throw AlignmentError("fit window " + std::to_string(window.first) + "-" + std::to_string(window.last) +
                             " outside target series");

    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (Year t = window.first; t <= window.last; ++t) {
        const double x1 = log_gdp_ratio(g, t, anchor_year, lag);
        const double x2 = static_cast<double>(t - anchor_year);
        const double r = y.at(t) - anchor_value;
        s11 += x1 * x1;
        s12 += x1 * x2;
        s22 += x2 * x2;
        b1 += x1 * r;
        b2 += x2 * r;
    }
    const double det = s11 * s22 - s12 * s12;
    if (s11 == 0.0 || s22 == 0.0 || det / (s11 * s22) < kSingularTolerance)
        throw RankDeficiencyError("GDP and time regressors are collinear over " + std::to_string(window.first) +
                                  "-" + std::to_string(window.last));
    return {(s22 * b1 - s12 * b2) / det, (s11 * b2 - s12 * b1) / det, anchor_year, anchor_value};
}

/// R², standard error with n - n_params degrees of freedom, and residuals.
[[nodiscard]] inline FitStats fit_stats(const AnnualSeries& measured, const AnnualSeries& predicted,
                                        std::size_t n_params = kModelParams) {
    if (measured.years() != predicted.years()) throw AlignmentError("measured and predicted ranges differ");
    const std::size_t n = measured.size();
    if (n <= n_params)
        throw InsufficientDataError(std::to_string(n) + " observations for " + std::to_string(n_params) +
                                    " parameters");
    const auto y = measured.values();
    const auto p = predicted.values();
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    double sse = 0.0, sst = 0.0;
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        resid[i] = y[i] - p[i];
        sse += resid[i] * resid[i];
        sst += (y[i] - mean) * (y[i] - mean);
    }
    if (sst == 0.0) throw DegenerateStatisticsError("measured series has zero variance");
    return {1.0 - sse / sst, std::sqrt(sse / static_cast<double>(n - n_params)), sse,
            AnnualSeries{measured.start_year(), std::move(resid), Unit::PercentPoints}};
}

/// Years usable for every lag candidate: y_t and G_{t-k} both observed.
[[nodiscard]] inline YearRange fit_window(const AnnualSeries& y, const AnnualSeries& g,
                                          const std::vector<int>& lags) {
    const auto [min_lag, max_lag] = std::minmax_element(lags.begin(), lags.end());
    return intersect(y.years(), {g.start_year() + *max_lag, g.end_year() + *min_lag});
}

namespace detail {

struct CandidateFit {
    SegmentedModel model;
    AnnualSeries predicted;
    double sse;
};

inline CandidateFit fit_candidate(const AnnualSeries& y, const AnnualSeries& g, YearRange window, Year break_year,
                                  int lag, const FitConfig& cfg) {
    if (break_year <= window.first || break_year > window.last)
        throw InsufficientDataError("break outside fit window " + std::to_string(window.first) + "-" +
                                    std::to_string(window.last));
    const Year t0 = window.first;
    const Segment s1 = fit_segment(y, g, t0, y.at(t0), lag, {t0, break_year - 1}, cfg.min_segment_obs);
    const double anchor2 = evaluate(s1, g, break_year, lag);
    const Segment s2 = fit_segment(y, g, break_year, anchor2, lag, {break_year, window.last}, cfg.min_segment_obs);
    SegmentedModel m{cfg.target, lag, break_year, s1, s2};
    AnnualSeries predicted = predict_level(m, g, window);
    double sse = 0.0;
    for (Year t = window.first; t <= window.last; ++t) {
        const double r = y.at(t) - predicted.at(t);
        sse += r * r;
    }
    return {m, std::move(predicted), sse};
}

}  // namespace detail

/**
 * @brief Exhaustive search over break year and lag for the two-segment model.
 *
 * For every grid point, segment 1 is anchored at the first measured value of
 * the window, segment 2 at segment 1's prediction at the break, and the total
 * SSE of predicted against measured levels is computed over the whole window.
 * The minimum wins; ties go to the earlier break year, then the smaller lag.
 */
[[nodiscard]] inline FitReport fit_model(const CountryDataset& data, const FitConfig& cfg) {
    cfg.validate();
    const AnnualSeries& y = data.rate(cfg.target);
    const AnnualSeries& g = data.gdp_per_capita;

    std::vector<int> lags = cfg.lag_candidates;
    std::sort(lags.begin(), lags.end());
    lags.erase(std::unique(lags.begin(), lags.end()), lags.end());

    const YearRange window = fit_window(y, g, lags);
    if (window.size() < 2 * cfg.min_segment_obs)
        throw ConfigurationError(data.country + ": usable window of " + std::to_string(window.size()) +
                                 " years is too short");

    std::vector<GridPoint> grid;
    std::map<Year, double> sse_by_break;
    std::optional<detail::CandidateFit> best;
    std::string failures;
    for (Year ts = cfg.break_grid.first; ts <= cfg.break_grid.last; ++ts) {
        for (int k : lags) {
            try {
                auto c = detail::fit_candidate(y, g, window, ts, k, cfg);
                grid.push_back({ts, k, c.sse, {}});
                auto [it, inserted] = sse_by_break.emplace(ts, c.sse);
                if (!inserted) it->second = std::min(it->second, c.sse);
                if (!best || c.sse < best->sse) best = std::move(c);
            } catch (const Error& e) {
                grid.push_back({ts, k, std::nullopt, e.what()});
                failures += "\n  break " + std::to_string(ts) + " lag " + std::to_string(k) + ": " + e.what();
            }
        }
    }
    if (!best) throw ConfigurationError(data.country + ": no admissible grid point" + failures);

    const AnnualSeries measured = y.slice(window);
    FitStats stats = fit_stats(measured, best->predicted, kModelParams);
    auto warnings = sign_warnings(best->model);
    return {best->model,
            stats.r_squared,
            stats.std_error,
            stats.sse,
            std::move(stats.residuals),
            measured,
            std::move(best->predicted),
            std::move(sse_by_break),
            std::move(grid),
            window.size(),
            std::move(warnings)};
}

struct OkunCorrelation {
    double slope;
    double intercept;
    double r_squared;
    std::size_t n;
};

/// Regresses du on -de (free intercept) over the common years.
[[nodiscard]] inline OkunCorrelation okun_correlation(const AnnualSeries& e, const AnnualSeries& u) {
    const YearRange common = intersect(e.years(), u.years());
    if (common.size() < 3)
        throw InsufficientDataError("okun_correlation needs at least 3 common years, have " +
                                    std::to_string(common.size()));
    const AnnualSeries du = diff(u.slice(common));
    const AnnualSeries de = diff(e.slice(common));
    const std::size_t n = du.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += -de.values()[i];
        my += du.values()[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = -de.values()[i] - mx;
        const double dy = du.values()[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateStatisticsError("constant du or de series");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx, sxy * sxy / (sxx * syy), n};
}

}  // namespace okun
