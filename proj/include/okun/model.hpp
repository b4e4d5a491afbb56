#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "okun/error.hpp"
#include "okun/ingest.hpp"
#include "okun/series.hpp"

namespace okun {

/**
 * @brief One regime of the integrated Okun relation.
 *
 * Within the segment the rate level is
 *
 *     y_t = anchor_value + slope * 100 ln(G_{t-k} / G_{anchor_year-k}) + trend * (t - anchor_year)
 *
 * There is no free intercept: the relation is exact at the anchor year.
 */
struct Segment {
    double slope = 0.0;         ///< pp of rate per pp of log-GDP growth
    double trend = 0.0;         ///< pp per year
    Year anchor_year = 0;
    double anchor_value = 0.0;  ///< pp

    friend bool operator==(const Segment&, const Segment&) = default;
};

/**
 * @brief Two segments joined at a break year, GDP regressor lagged by `lag` years.
 *
 * The break year belongs to segment 2, whose anchor is segment 1's prediction
 * at the break, so the predicted curve is continuous.
 */
struct SegmentedModel {
    RateKind target = RateKind::Unemployment;
    int lag = 0;
    Year break_year = 0;
    Segment segment1;
    Segment segment2;

    friend bool operator==(const SegmentedModel&, const SegmentedModel&) = default;
};

/// 100 ln(G_{t-lag} / G_{base-lag}).
[[nodiscard]] inline double log_gdp_ratio(const AnnualSeries& g, Year t, Year base, int lag) {
    if (!g.contains(t - lag) || !g.contains(base - lag))
        throw AlignmentError("GDP series " + std::to_string(g.start_year()) + "-" + std::to_string(g.end_year()) +
                             " does not cover " + std::to_string(std::min(t, base) - lag) + "-" +
                             std::to_string(std::max(t, base) - lag));
    return 100.0 * (std::log(g.at(t - lag)) - std::log(g.at(base - lag)));
}

[[nodiscard]] inline double evaluate(const Segment& s, const AnnualSeries& g, Year t, int lag) {
    return s.anchor_value + s.slope * log_gdp_ratio(g, t, s.anchor_year, lag) +
           s.trend * static_cast<double>(t - s.anchor_year);
}

/// Builds a model whose segment 2 is anchored at segment 1's prediction at the break.
[[nodiscard]] inline SegmentedModel chain_segments(RateKind target, int lag, Year break_year, const Segment& segment1,
                                                   double slope2, double trend2, const AnnualSeries& g) {
    if (!(segment1.anchor_year < break_year))
        throw ConfigurationError("segment 1 anchor must precede the break year");
    Segment segment2{slope2, trend2, break_year, evaluate(segment1, g, break_year, lag)};
    return {target, lag, break_year, segment1, segment2};
}

/// Years for which `m` can be evaluated on `g`.
[[nodiscard]] inline YearRange predictable_years(const SegmentedModel& m, const AnnualSeries& g) noexcept {
    return {std::max(m.segment1.anchor_year, g.start_year() + m.lag), g.end_year() + m.lag};
}

[[nodiscard]] inline AnnualSeries predict_level(const SegmentedModel& m, const AnnualSeries& g, YearRange years) {
    if (years.empty()) throw AlignmentError("empty prediction range");
    if (years.first < m.segment1.anchor_year)
        throw AlignmentError("prediction starts at " + std::to_string(years.first) + ", before anchor year " +
                             std::to_string(m.segment1.anchor_year));
    std::vector<double> out;
    out.reserve(years.size());
    for (Year t = years.first; t <= years.last; ++t)
        out.push_back(evaluate(t < m.break_year ? m.segment1 : m.segment2, g, t, m.lag));
    return {years.first, std::move(out), Unit::PercentPoints};
}

[[nodiscard]] inline AnnualSeries predict_level(const SegmentedModel& m, const AnnualSeries& g) {
    return predict_level(m, g, predictable_years(m, g));
}

/**
 * Annual change of the predicted rate, trend + slope * dlnG_{t-k}, for
 * years.first+1 .. years.last. The change into the break year is taken
 * from segment 1's level at t_s - 1 to the segment 2 anchor.
 */
[[nodiscard]] inline AnnualSeries predict_change(const SegmentedModel& m, const AnnualSeries& g, YearRange years) {
    if (years.size() < 2) throw InsufficientDataError("predict_change needs at least 2 years");
    if (years.first < m.segment1.anchor_year)
        throw AlignmentError("prediction starts before anchor year " + std::to_string(m.segment1.anchor_year));
    std::vector<double> out;
    out.reserve(years.size() - 1);
    for (Year t = years.first + 1; t <= years.last; ++t) {
        if (t == m.break_year) {
            out.push_back(m.segment2.anchor_value - evaluate(m.segment1, g, t - 1, m.lag));
            continue;
        }
        const Segment& s = t < m.break_year ? m.segment1 : m.segment2;
        out.push_back(s.trend + s.slope * log_gdp_ratio(g, t, t - 1, m.lag));
    }
    return {years.first + 1, std::move(out), Unit::PercentPoints};
}

[[nodiscard]] inline AnnualSeries predict_change(const SegmentedModel& m, const AnnualSeries& g) {
    return predict_change(m, g, predictable_years(m, g));
}

/// GDP growth (percent per year) at which the predicted rate stays constant.
[[nodiscard]] inline double threshold(const Segment& seg, RateKind /*target*/ = RateKind::Unemployment) {
    if (seg.slope == 0.0) throw DegenerateModelError("threshold undefined for zero slope");
    return -seg.trend / seg.slope;
}

/**
 * @brief Splits the predicted level into a time-trend curve and a GDP curve.
 *
 * Returns (trend, gdp) with trend - gdp equal to predict_level at every year:
 * trend_t = a (t - t_0) and gdp_t = -b * 100 ln(G_t / G_0) - y_0, each
 * continued past the break by accumulating segment 2's contribution on top of
 * segment 1's value at t_s.
 */
[[nodiscard]] inline std::pair<AnnualSeries, AnnualSeries> trend_components(const SegmentedModel& m,
                                                                           const AnnualSeries& g, YearRange years) {
    if (years.empty() || years.first < m.segment1.anchor_year)
        throw AlignmentError("component range must start at or after the anchor year");
    const Segment& s1 = m.segment1;
    const Segment& s2 = m.segment2;
    std::vector<double> trend, gdp;
    trend.reserve(years.size());
    gdp.reserve(years.size());
    for (Year t = years.first; t <= years.last; ++t) {
        if (t < m.break_year) {
            trend.push_back(s1.trend * static_cast<double>(t - s1.anchor_year));
            gdp.push_back(-s1.slope * log_gdp_ratio(g, t, s1.anchor_year, m.lag) - s1.anchor_value);
        } else {
            const double x1 = log_gdp_ratio(g, m.break_year, s1.anchor_year, m.lag);
            const double at_break = evaluate(s1, g, m.break_year, m.lag);
            trend.push_back(s1.trend * static_cast<double>(m.break_year - s1.anchor_year) +
                            s2.trend * static_cast<double>(t - m.break_year));
            gdp.push_back(-s1.slope * x1 - s2.slope * log_gdp_ratio(g, t, m.break_year, m.lag) - s1.anchor_value -
                          (s2.anchor_value - at_break));
        }
    }
    return {AnnualSeries{years.first, std::move(trend), Unit::PercentPoints},
            AnnualSeries{years.first, std::move(gdp), Unit::PercentPoints}};
}

[[nodiscard]] inline std::pair<AnnualSeries, AnnualSeries> trend_components(const SegmentedModel& m,
                                                                           const AnnualSeries& g) {
    return trend_components(m, g, predictable_years(m, g));
}

/// Slopes whose sign contradicts the expected direction (negative for
/// unemployment, positive for employment).
[[nodiscard]] inline std::vector<std::string> sign_warnings(const SegmentedModel& m) {
    std::vector<std::string> out;
    const auto check = [&](const Segment& s, const char* name) {
        const bool ok = m.target == RateKind::Unemployment ? s.slope < 0.0 : s.slope > 0.0;
        if (!ok)
            out.push_back(std::string(name) + " slope " + format_number(s.slope) + " has unexpected sign for " +
                          std::string(to_string(m.target)));
    };
    check(m.segment1, "segment1");
    check(m.segment2, "segment2");
    return out;
}

}  // namespace okun
