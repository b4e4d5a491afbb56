#pragma once

#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "okun/estimator.hpp"
#include "okun/format.hpp"
#include "okun/ingest.hpp"
#include "okun/manifest.hpp"
#include "okun/model.hpp"
#include "okun/projector.hpp"
#include "okun/series.hpp"

namespace okun {

inline constexpr const char* kFitReportSchema = "okun.fit-report/1";

/// Named text output (file name relative to the output directory, content).
struct OutputFile {
    std::string name;
    std::string content;
};

namespace detail {

inline nlohmann::json num(double x) { return round_sig6(x); }

inline nlohmann::json segment_json(const Segment& s, RateKind target) {
    nlohmann::json j;
    j["slope"] = num(s.slope);
    j["trend"] = num(s.trend);
    j["anchor_year"] = s.anchor_year;
    j["anchor_value"] = num(s.anchor_value);
    j["threshold"] = s.slope == 0.0 ? nlohmann::json(nullptr) : num(threshold(s, target));
    return j;
}

/// Tab-separated row; empty optional cells stay blank.
inline std::string tsv_row(std::initializer_list<std::optional<double>> cells, Year year) {
    std::string row = std::to_string(year);
    for (const auto& c : cells) {
        row += '\t';
        if (c) row += format_number(*c);
    }
    return row + '\n';
}

}  // namespace detail

/// JSON document for `<country>_<target>_fit.json`. All numbers carry six
/// significant digits; keys are emitted in sorted order.
[[nodiscard]] inline nlohmann::json fit_report_json(const FitReport& r, const CountryDataset& data) {
    using nlohmann::json;
    const SegmentedModel& m = r.model;
    json j;
    j["schema"] = kFitReportSchema;
    j["country"] = data.country;
    j["gdp_variant"] = data.gdp_variant;
    j["target"] = std::string(to_string(m.target));
    j["window"] = {{"first", r.window().first}, {"last", r.window().last}};
    j["n_obs"] = r.n_obs;
    j["n_params"] = kModelParams;
    j["break_year"] = m.break_year;
    j["lag"] = m.lag;
    j["segment1"] = detail::segment_json(m.segment1, m.target);
    j["segment2"] = detail::segment_json(m.segment2, m.target);
    j["r_squared"] = detail::num(r.r_squared);
    j["std_error"] = detail::num(r.std_error);
    j["sse"] = detail::num(r.sse);
    json by_break = json::object();
    for (const auto& [year, sse] : r.sse_by_break) by_break[std::to_string(year)] = detail::num(sse);
    j["sse_by_break"] = by_break;
    json shifts = json::array();
    for (const auto& s : data.adjustments)
        shifts.push_back({{"series", std::string(to_string(s.series))}, {"year", s.year},
                          {"magnitude", detail::num(s.magnitude)}});
    j["level_shifts"] = shifts;
    j["warnings"] = r.warnings;
    return j;
}

/// `year,measured,predicted,residual` on the measured scale (level shifts restored).
[[nodiscard]] inline std::string predicted_csv(const FitReport& r, const CountryDataset& data) {
    const RateKind k = r.model.target;
    const AnnualSeries measured = restore_level_shifts(r.measured, data.adjustments, k);
    const AnnualSeries predicted = restore_level_shifts(r.predicted, data.adjustments, k);
    std::string out = "year,measured,predicted,residual\n";
    for (Year y = measured.start_year(); y <= measured.end_year(); ++y)
        out += std::to_string(y) + "," + format_number(measured.at(y)) + "," + format_number(predicted.at(y)) + "," +
               format_number(r.residuals.at(y)) + "\n";
    return out;
}

/// Turns a manifest scenario into a concrete one spliced onto the last observed GDP.
[[nodiscard]] inline GrowthScenario make_scenario(const ScenarioDef& def, const CountryDataset& data,
                                                  const SegmentedModel& m, std::optional<Year> horizon = std::nullopt) {
    const AnnualSeries& g = data.gdp_per_capita;
    GrowthRule rule = ConstantIncrement{0.0};
    switch (def.kind) {
        case ScenarioDef::Kind::ConstantIncrement: rule = ConstantIncrement{def.parameter}; break;
        case ScenarioDef::Kind::Exponential: rule = Exponential{def.parameter}; break;
        case ScenarioDef::Kind::Threshold: rule = Exponential{threshold(m.segment2, m.target) / 100.0}; break;
    }
    return {rule, g.end_year(), g.back(), horizon.value_or(def.horizon)};
}

/// `year,gdp,projected_rate,clipped`, starting at the splice year.
[[nodiscard]] inline std::string projection_csv(const Projection& p) {
    std::string out = "year,gdp,projected_rate,clipped\n";
    for (Year y = p.rate.start_year(); y <= p.rate.end_year(); ++y)
        out += std::to_string(y) + "," + format_number(p.gdp.at(y)) + "," + format_number(p.rate.at(y)) + "," +
               (p.clipped[static_cast<std::size_t>(y - p.rate.start_year())] ? "1" : "0") + "\n";
    return out;
}

/// du against -de for the years both rates are observed.
[[nodiscard]] inline std::string du_vs_minus_de_tsv(const CountryDataset& data) {
    const auto [e, u] = align(data.rate(RateKind::Employment), data.rate(RateKind::Unemployment));
    const AnnualSeries du = diff(u);
    const AnnualSeries de = diff(e);
    std::string out = "year\tdu\tminus_de\n";
    for (Year y = du.start_year(); y <= du.end_year(); ++y) out += detail::tsv_row({du.at(y), -de.at(y)}, y);
    return out;
}

/// Measured against predicted levels on the measured scale.
[[nodiscard]] inline std::string level_fit_tsv(const FitReport& r, const CountryDataset& data) {
    const AnnualSeries measured = restore_level_shifts(r.measured, data.adjustments, r.model.target);
    const AnnualSeries predicted = restore_level_shifts(r.predicted, data.adjustments, r.model.target);
    std::string out = "year\tmeasured\tpredicted\n";
    for (Year y = measured.start_year(); y <= measured.end_year(); ++y)
        out += detail::tsv_row({measured.at(y), predicted.at(y)}, y);
    return out;
}

/// Time-trend and GDP components (trend - gdp_component = predicted) plus
/// the post-break prediction with segment 1's trend kept.
[[nodiscard]] inline std::string components_tsv(const FitReport& r, const CountryDataset& data) {
    const SegmentedModel& m = r.model;
    const YearRange years = r.window();
    const auto [trend, gdp] = trend_components(m, data.gdp_per_capita, years);
    const AnnualSeries predicted = predict_level(m, data.gdp_per_capita, years);
    const AnnualSeries cf = counterfactual_trend(m, data.gdp_per_capita, {m.break_year, years.last});
    std::string out = "year\ttrend\tgdp_component\tpredicted\tcounterfactual\n";
    for (Year y = years.first; y <= years.last; ++y) {
        const std::optional<double> c = cf.contains(y) ? std::optional<double>(cf.at(y)) : std::nullopt;
        out += detail::tsv_row({trend.at(y), gdp.at(y), predicted.at(y), c}, y);
    }
    return out;
}

/// Observed GDP with a linear (constant increment C) and an exponential
/// continuation, both starting from the last observed value.
[[nodiscard]] inline std::string gdp_paths_tsv(const CountryDataset& data, double increment, double rate,
                                               Year horizon) {
    const AnnualSeries& g = data.gdp_per_capita;
    horizon = std::max(horizon, g.end_year());
    const AnnualSeries lin = gdp_path({ConstantIncrement{increment}, g.end_year(), g.back(), horizon});
    const AnnualSeries ex = gdp_path({Exponential{rate}, g.end_year(), g.back(), horizon});
    std::string out = "year\tobserved\tlinear\texponential\n";
    for (Year y = g.start_year(); y <= horizon; ++y) {
        const auto at = [y](const AnnualSeries& s) {
            return s.contains(y) ? std::optional<double>(s.at(y)) : std::nullopt;
        };
        out += detail::tsv_row({at(g), at(lin), at(ex)}, y);
    }
    return out;
}

/// Mean log growth (per year, as a rate) of the observed GDP series.
[[nodiscard]] inline double mean_log_rate(const AnnualSeries& g) {
    if (g.size() < 2) throw InsufficientDataError("need at least 2 GDP values");
    return std::log(g.back() / g.front()) / static_cast<double>(g.size() - 1);
}

/// Growth of the (lagged) GDP regressor since the break, with the segment 2
/// threshold and the mean growth over the same years.
[[nodiscard]] inline std::string growth_threshold_tsv(const FitReport& r, const CountryDataset& data) {
    const SegmentedModel& m = r.model;
    const AnnualSeries growth = lag(log_growth(data.gdp_per_capita), static_cast<std::size_t>(m.lag));
    const YearRange years = intersect(growth.years(), {m.break_year, r.window().last});
    const AnnualSeries since = growth.slice(years);
    double mean = 0.0;
    for (double v : since.values()) mean += v;
    mean /= static_cast<double>(since.size());
    const std::optional<double> thr =
        m.segment2.slope == 0.0 ? std::nullopt : std::optional<double>(threshold(m.segment2, m.target));
    std::string out = "year\tdlnG\tthreshold\tmean\n";
    for (Year y = years.first; y <= years.last; ++y) out += detail::tsv_row({since.at(y), thr, mean}, y);
    return out;
}

/**
 * @brief All plot-data files for one country.
 *
 * The linear GDP path uses the increment of the first constant-increment
 * scenario in the manifest (falling back to the mean observed increment);
 * the exponential path uses the observed mean log growth. The horizon is
 * the furthest scenario horizon, 2050 when none are defined.
 */
[[nodiscard]] inline std::vector<OutputFile> figure_files(const FitReport& r, const CountryDataset& data,
                                                          const RunManifest& manifest) {
    std::vector<OutputFile> out;
    if (data.has(RateKind::Employment) && data.has(RateKind::Unemployment))
        out.push_back({"du_vs_minus_de.tsv", du_vs_minus_de_tsv(data)});
    out.push_back({"level_fit.tsv", level_fit_tsv(r, data)});
    out.push_back({"components.tsv", components_tsv(r, data)});

    const AnnualSeries& g = data.gdp_per_capita;
    std::optional<double> increment;
    Year horizon = 0;
    for (const auto& [name, def] : manifest.scenarios) {
        horizon = std::max(horizon, def.horizon);
        if (!increment && def.kind == ScenarioDef::Kind::ConstantIncrement) increment = def.parameter;
    }
    if (horizon == 0) horizon = 2050;
    const double c = increment.value_or((g.back() - g.front()) / static_cast<double>(g.size() - 1));
    out.push_back({"gdp_paths.tsv", gdp_paths_tsv(data, c, mean_log_rate(g), horizon)});
    out.push_back({"growth_threshold.tsv", growth_threshold_tsv(r, data)});
    return out;
}

}  // namespace okun
