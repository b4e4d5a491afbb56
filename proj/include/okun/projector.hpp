#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "okun/error.hpp"
#include "okun/ingest.hpp"
#include "okun/model.hpp"
#include "okun/series.hpp"

namespace okun {

/// G_t = G_0 + C (t - t_0): the long-run solution of inertial growth dlnG/dt = C/G.
struct ConstantIncrement {
    double increment;  // currency per capita per year
};

/// G_t = G_0 exp(r (t - t_0)).
struct Exponential {
    double rate;  // per-year log rate, e.g. 0.0209
};

using GrowthRule = std::variant<ConstantIncrement, Exponential>;

struct GrowthScenario {
    GrowthRule rule;
    Year start_year;
    double start_value;
    Year horizon_year;
};

/// GDP per capita from start_year to horizon_year inclusive.
[[nodiscard]] inline AnnualSeries gdp_path(const GrowthScenario& s) {
    if (!(s.start_value > 0.0)) throw DomainError("scenario start value must be positive", s.start_year);
    if (s.horizon_year < s.start_year) throw AlignmentError("scenario horizon precedes its start year");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(s.horizon_year - s.start_year + 1));
    for (Year t = s.start_year; t <= s.horizon_year; ++t) {
        const double dt = static_cast<double>(t - s.start_year);
        const double g = std::visit(
            [&](const auto& r) {
                if constexpr (std::is_same_v<std::decay_t<decltype(r)>, ConstantIncrement>)
                    return s.start_value + r.increment * dt;
                else
                    return s.start_value * std::exp(r.rate * dt);
            },
            s.rule);
        if (!(g > 0.0)) throw DomainError("scenario GDP non-positive in " + std::to_string(t), t);
        v.push_back(g);
    }
    return {s.start_year, std::move(v), Unit::CurrencyPerCapita};
}

/// Percent growth of a path. For a constant increment C this tracks 100 C / G.
[[nodiscard]] inline AnnualSeries implied_growth_rate(const AnnualSeries& path) { return log_growth(path); }

struct Projection {
    AnnualSeries gdp;   ///< start_year .. horizon_year
    AnnualSeries rate;  ///< clipped to [0, 100]
    std::vector<bool> clipped;

    [[nodiscard]] bool any_clipped() const noexcept {
        return std::find(clipped.begin(), clipped.end(), true) != clipped.end();
    }
};

/// Relative tolerance for the scenario start value to match the last observed GDP.
inline constexpr double kSpliceTolerance = 1e-9;

/**
 * @brief Projects the rate through the scenario horizon.
 *
 * The scenario must start at the last historical GDP year with that year's
 * value. Historical and scenario GDP are concatenated and evaluated with the
 * fitted model, so segment 2 runs unchanged into the future. Values outside
 * [0, 100] are clipped and flagged.
 */
[[nodiscard]] inline Projection project_rate(const SegmentedModel& m, const AnnualSeries& history_gdp,
                                             const GrowthScenario& s) {
    if (s.start_year != history_gdp.end_year())
        throw AlignmentError("scenario starts in " + std::to_string(s.start_year) + " but GDP history ends in " +
                             std::to_string(history_gdp.end_year()));
    if (std::abs(s.start_value - history_gdp.back()) > kSpliceTolerance * history_gdp.back())
        throw AlignmentError("scenario start value " + format_number(s.start_value) +
                             " does not match last observed GDP " + format_number(history_gdp.back()));
    AnnualSeries path = gdp_path(s);
    std::vector<double> joined(history_gdp.values().begin(), history_gdp.values().end());
    joined.insert(joined.end(), path.values().begin() + 1, path.values().end());
    const AnnualSeries g{history_gdp.start_year(), std::move(joined), Unit::CurrencyPerCapita};

    const AnnualSeries raw = predict_level(m, g, {s.start_year, s.horizon_year});
    std::vector<double> rate(raw.values().begin(), raw.values().end());
    std::vector<bool> clipped(rate.size(), false);
    for (std::size_t i = 0; i < rate.size(); ++i) {
        const double c = std::clamp(rate[i], 0.0, 100.0);
        clipped[i] = c != rate[i];
        rate[i] = c;
    }
    return {std::move(path), AnnualSeries{s.start_year, std::move(rate), Unit::PercentPoints}, std::move(clipped)};
}

[[nodiscard]] inline Projection project_rate(const SegmentedModel& m, const CountryDataset& history,
                                             const GrowthScenario& s) {
    return project_rate(m, history.gdp_per_capita, s);
}

/// Post-break prediction keeping segment 1's trend (segment 2's GDP slope retained).
[[nodiscard]] inline AnnualSeries counterfactual_trend(const SegmentedModel& m, const AnnualSeries& g,
                                                       YearRange years) {
    if (years.empty() || years.first < m.break_year)
        throw AlignmentError("counterfactual range must start at or after the break year");
    const Segment& s2 = m.segment2;
    std::vector<double> out;
    out.reserve(years.size());
    for (Year t = years.first; t <= years.last; ++t)
        out.push_back(s2.anchor_value + s2.slope * log_gdp_ratio(g, t, m.break_year, m.lag) +
                      m.segment1.trend * static_cast<double>(t - m.break_year));
    return {years.first, std::move(out), Unit::PercentPoints};
}

/// Over [break year, last year of the target series covered by GDP].
[[nodiscard]] inline AnnualSeries counterfactual_trend(const SegmentedModel& m, const CountryDataset& history) {
    Year last = history.gdp_per_capita.end_year() + m.lag;
    if (history.has(m.target)) last = std::min(last, history.rate(m.target).end_year());
    return counterfactual_trend(m, history.gdp_per_capita, {m.break_year, last});
}

}  // namespace okun
