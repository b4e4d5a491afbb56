#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "okun/error.hpp"
#include "okun/estimator.hpp"
#include "okun/ingest.hpp"
#include "okun/series.hpp"

namespace okun {

struct SeriesRef {
    std::filesystem::path path;  // resolved against the manifest directory
    Unit unit;
};

struct CountryEntry {
    std::string name;
    std::string gdp_variant;
    SeriesRef gdp_per_capita;
    std::optional<SeriesRef> employment_rate;
    std::optional<SeriesRef> unemployment_rate;
    std::vector<LevelShift> level_shifts;
    FitConfig fit;
};

/// A named growth rule from the manifest. `Threshold` grows exponentially at
/// the fitted segment 2 threshold.
struct ScenarioDef {
    enum class Kind { ConstantIncrement, Exponential, Threshold };
    Kind kind;
    double parameter = 0.0;  // C for ConstantIncrement, r for Exponential
    Year horizon = 2050;
};

struct RunManifest {
    std::filesystem::path base_dir;
    std::filesystem::path output_dir;
    std::map<std::string, CountryEntry> countries;
    std::map<std::string, ScenarioDef> scenarios;

    [[nodiscard]] const CountryEntry& country(const std::string& id) const {
        const auto it = countries.find(id);
        if (it == countries.end()) throw ConfigurationError("unknown country '" + id + "'");
        return it->second;
    }
    [[nodiscard]] const ScenarioDef& scenario(const std::string& id) const {
        const auto it = scenarios.find(id);
        if (it == scenarios.end()) throw ConfigurationError("unknown scenario '" + id + "'");
        return it->second;
    }
};

namespace detail {

using nlohmann::json;

inline void apply_fit_overrides(const json& j, FitConfig& cfg) {
    if (j.contains("break_from")) cfg.break_grid.first = j.at("break_from").get<Year>();
    if (j.contains("break_to")) cfg.break_grid.last = j.at("break_to").get<Year>();
    if (j.contains("lags")) cfg.lag_candidates = j.at("lags").get<std::vector<int>>();
    if (j.contains("min_segment_obs")) cfg.min_segment_obs = j.at("min_segment_obs").get<std::size_t>();
    if (j.contains("target")) cfg.target = rate_kind_from_string(j.at("target").get<std::string>());
}

inline SeriesRef series_ref(const json& j, const std::filesystem::path& base) {
    SeriesRef ref{base / j.at("path").get<std::string>(), unit_from_string(j.at("unit").get<std::string>())};
    if (!std::filesystem::exists(ref.path)) throw ConfigurationError("missing data file " + ref.path.string());
    return ref;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigurationError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/**
 * @brief Loads a run manifest.
 *
 * Layout:
 *
 *     { "schema_version": 1, "output_dir": "out",
 *       "fit": { "break_from": 1975, "break_to": 1995, "lags": [0, 1],
 *                "min_segment_obs": 5, "target": "unemployment" },
 *       "countries": { "us": {
 *           "gdp_variant": "EKS",
 *           "gdp_per_capita":    { "path": "us_gdp.csv", "unit": "currency-per-capita" },
 *           "employment_rate":   { "path": "us_emp.csv", "unit": "percent-points" },
 *           "unemployment_rate": { "path": "us_unemp.csv", "unit": "percent-points" },
 *           "level_shifts": [ { "series": "employment", "year": 1982, "magnitude": 2.1 } ],
 *           "fit": { ...per-country overrides... } } },
 *       "scenarios": { "linear": { "rule": "constant_increment", "increment": 591.5, "horizon": 2050 },
 *                      "trend": { "rule": "exponential", "rate": 0.0209, "horizon": 2050 },
 *                      "flat":  { "rule": "threshold", "horizon": 2050 } } }
 *
 * Paths are relative to the manifest. Every referenced file must exist.
 */
[[nodiscard]] inline RunManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
    using detail::json;
    RunManifest m;
    m.base_dir = base_dir;
    try {
        const json j = json::parse(text);
        const int version = j.value("schema_version", 1);
        if (version != 1) throw ConfigurationError("unsupported manifest schema_version " + std::to_string(version));
        m.output_dir = base_dir / j.value("output_dir", std::string("."));

        FitConfig defaults;
        if (j.contains("fit")) detail::apply_fit_overrides(j.at("fit"), defaults);

        for (const auto& [id, c] : j.at("countries").items()) {
            CountryEntry e;
            e.name = id;
            e.gdp_variant = c.value("gdp_variant", std::string());
            e.gdp_per_capita = detail::series_ref(c.at("gdp_per_capita"), base_dir);
            if (c.contains("employment_rate")) e.employment_rate = detail::series_ref(c.at("employment_rate"), base_dir);
            if (c.contains("unemployment_rate"))
                e.unemployment_rate = detail::series_ref(c.at("unemployment_rate"), base_dir);
            for (const auto& s : c.value("level_shifts", json::array()))
                e.level_shifts.push_back({rate_kind_from_string(s.at("series").get<std::string>()),
                                          s.at("year").get<Year>(), s.at("magnitude").get<double>()});
            e.fit = defaults;
            if (c.contains("fit")) detail::apply_fit_overrides(c.at("fit"), e.fit);
            e.fit.validate();
            m.countries.emplace(id, std::move(e));
        }

        const json scenarios = j.value("scenarios", json::object());
        for (const auto& [id, s] : scenarios.items()) {
            ScenarioDef d{};
            const auto rule = s.at("rule").get<std::string>();
            if (rule == "constant_increment") {
                d.kind = ScenarioDef::Kind::ConstantIncrement;
                d.parameter = s.at("increment").get<double>();
            } else if (rule == "exponential") {
                d.kind = ScenarioDef::Kind::Exponential;
                d.parameter = s.at("rate").get<double>();
            } else if (rule == "threshold") {
                d.kind = ScenarioDef::Kind::Threshold;
            } else {
                throw ConfigurationError("scenario '" + id + "': unknown rule '" + rule + "'");
            }
            d.horizon = s.value("horizon", 2050);
            m.scenarios.emplace(id, d);
        }
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("malformed manifest: ") + e.what());
    }
    return m;
}

[[nodiscard]] inline RunManifest load_manifest(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ConfigurationError("missing manifest " + path.string());
    return parse_manifest(detail::read_file(path), path.parent_path());
}

/// Reads a series file; parse errors are re-raised with the path prepended.
[[nodiscard]] inline AnnualSeries load_series(const SeriesRef& ref) {
    const std::string text = detail::read_file(ref.path);
    try {
        return parse_series_csv(text, ref.unit);
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), e.line(), ref.path.string() + ": " + e.what());
    }
}

[[nodiscard]] inline CountryDataset load_country(const CountryEntry& e) {
    std::optional<AnnualSeries> emp, unemp;
    if (e.employment_rate) emp = load_series(*e.employment_rate);
    if (e.unemployment_rate) unemp = load_series(*e.unemployment_rate);
    return make_dataset(e.name, load_series(e.gdp_per_capita), std::move(emp), std::move(unemp), e.level_shifts,
                        e.gdp_variant);
}

}  // namespace okun
