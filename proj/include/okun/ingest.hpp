#pragma once

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "okun/error.hpp"
#include "okun/format.hpp"
#include "okun/series.hpp"

namespace okun {

/// Which labour-market rate a series or model refers to.
enum class RateKind { Unemployment, Employment };

[[nodiscard]] inline std::string_view to_string(RateKind k) noexcept {
    return k == RateKind::Unemployment ? "unemployment" : "employment";
}

[[nodiscard]] inline RateKind rate_kind_from_string(std::string_view s) {
    if (s == "unemployment") return RateKind::Unemployment;
    if (s == "employment") return RateKind::Employment;
    throw ConfigurationError("unknown rate series '" + std::string(s) + "'");
}

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

struct Record {
    Year year;
    double value;
    std::size_t line;
};

inline Year parse_year(std::string_view field, std::size_t line) {
    field = trim(field);
    Year y = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), y);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw ParseError(ParseError::Kind::Unparsable, line,
                         "line " + std::to_string(line) + ": unparsable year '" + std::string(field) + "'");
    return y;
}

inline double parse_value(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v))
        throw ParseError(ParseError::Kind::Unparsable, line,
                         "line " + std::to_string(line) + ": unparsable number '" + std::string(field) + "'");
    return v;
}

/// Sorts records, rejects duplicates and gaps, builds the series.
inline AnnualSeries assemble(std::vector<Record> records, Unit unit) {
    if (records.empty()) throw ParseError(ParseError::Kind::Empty, 0, "no data records");
    std::stable_sort(records.begin(), records.end(),
                     [](const Record& a, const Record& b) { return a.year < b.year; });
    std::vector<double> values;
    values.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0) {
            const Record& prev = records[i - 1];
            const Record& cur = records[i];
            if (cur.year == prev.year)
                throw ParseError(ParseError::Kind::DuplicateYear, std::max(prev.line, cur.line),
                                 "line " + std::to_string(std::max(prev.line, cur.line)) + ": duplicate year " +
                                     std::to_string(cur.year));
            if (cur.year != prev.year + 1)
                throw ParseError(ParseError::Kind::Gap, cur.line,
                                 "line " + std::to_string(cur.line) + ": gap in years, missing " +
                                     std::to_string(prev.year + 1));
        }
        values.push_back(records[i].value);
    }
    return {records.front().year, std::move(values), unit};
}

/// Parses `year,<cols...>` text selecting column `column` (1-based, after year).
inline AnnualSeries parse_columns(std::string_view text, std::optional<std::string_view> column_name,
                                  Unit unit) {
    const auto lines = split(text, '\n');
    std::vector<Record> records;
    std::size_t column = 1;
    bool first_content = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string_view line = trim(lines[i]);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (first_content) {
            first_content = false;
            if (trim(fields.front()) == "year") {
                const std::string_view wanted = column_name.value_or("value");
                bool found = false;
                for (std::size_t c = 1; c < fields.size(); ++c) {
                    if (trim(fields[c]) == wanted) {
                        column = c;
                        found = true;
                        break;
                    }
                }
                if (!found || (!column_name && fields.size() != 2))
                    throw ParseError(ParseError::Kind::Unparsable, line_no,
                                     "line " + std::to_string(line_no) + ": header lacks column '" +
                                         std::string(wanted) + "'");
                continue;
            }
            if (column_name)
                throw ParseError(ParseError::Kind::Unparsable, line_no,
                                 "line " + std::to_string(line_no) + ": header line required");
        }
        if (fields.size() <= column || (!column_name && fields.size() != 2))
            throw ParseError(ParseError::Kind::Unparsable, line_no,
                             "line " + std::to_string(line_no) + ": expected year,value");
        records.push_back({parse_year(fields[0], line_no), parse_value(fields[column], line_no), line_no});
    }
    return assemble(std::move(records), unit);
}

}  // namespace detail

/**
 * @brief Parses a `year,value` CSV into a contiguous series.
 *
 * Accepts LF or CRLF line endings and one optional `year,value` header.
 * Records may appear in any order; they are sorted before the duplicate and
 * gap checks. Every failure is a ParseError carrying the offending line.
 */
[[nodiscard]] inline AnnualSeries parse_series_csv(std::string_view text, Unit declared_unit) {
    return detail::parse_columns(text, std::nullopt, declared_unit);
}

/// Extracts one named column from a CSV whose header starts with `year`
/// (e.g. the `predicted` column of a fit output).
[[nodiscard]] inline AnnualSeries parse_series_column(std::string_view text, std::string_view column,
                                                      Unit declared_unit) {
    return detail::parse_columns(text, column, declared_unit);
}

/// Inverse of parse_series_csv at six significant digits.
[[nodiscard]] inline std::string write_series_csv(const AnnualSeries& s) {
    std::string out = "year,value\n";
    for (Year y = s.start_year(); y <= s.end_year(); ++y)
        out += std::to_string(y) + "," + format_number(s.at(y)) + "\n";
    return out;
}

/// Fraction <-> percent-point conversion; anything else is a UnitError.
[[nodiscard]] inline AnnualSeries normalize_unit(const AnnualSeries& s, Unit target) {
    if (s.unit() == target) return s;
    double factor = 0.0;
    if (s.unit() == Unit::Fraction && target == Unit::PercentPoints)
        factor = 100.0;
    else if (s.unit() == Unit::PercentPoints && target == Unit::Fraction)
        factor = 0.01;
    else
        throw UnitError("unsupported conversion " + std::string(to_string(s.unit())) + " -> " +
                        std::string(to_string(target)));
    std::vector<double> v(s.values().begin(), s.values().end());
    for (double& x : v) x *= factor;
    return {s.start_year(), std::move(v), target};
}

/// A definitional jump in a measured rate, removed before estimation.
struct LevelShift {
    RateKind series;
    Year year;
    double magnitude;  // percent points

    friend bool operator==(const LevelShift&, const LevelShift&) = default;
};

/// Subtracts `magnitude` from every value at or after `shift.year`.
[[nodiscard]] inline AnnualSeries apply_level_shift(const AnnualSeries& s, const LevelShift& shift) {
    if (!s.contains(shift.year) || shift.year == s.start_year())
        throw AlignmentError("level shift year " + std::to_string(shift.year) + " must lie in " +
                             std::to_string(s.start_year() + 1) + "-" + std::to_string(s.end_year()));
    std::vector<double> v(s.values().begin(), s.values().end());
    for (std::size_t i = static_cast<std::size_t>(shift.year - s.start_year()); i < v.size(); ++i)
        v[i] -= shift.magnitude;
    return {s.start_year(), std::move(v), s.unit()};
}

/// Re-adds the shifts declared for `kind`, mapping model-space values back to
/// the measured scale for display.
[[nodiscard]] inline AnnualSeries restore_level_shifts(const AnnualSeries& s, const std::vector<LevelShift>& shifts,
                                                       RateKind kind) {
    std::vector<double> v(s.values().begin(), s.values().end());
    for (const auto& sh : shifts) {
        if (sh.series != kind) continue;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (s.start_year() + static_cast<Year>(i) >= sh.year) v[i] += sh.magnitude;
    }
    return {s.start_year(), std::move(v), s.unit()};
}

/// Minimum overlap between GDP and each rate series.
inline constexpr std::size_t kMinOverlapYears = 12;

/**
 * @brief Validated GDP and rate series for one country.
 *
 * Rate series are stored after their level shifts have been applied; the
 * shifts themselves are kept so outputs can be mapped back.
 */
struct CountryDataset {
    std::string country;
    AnnualSeries gdp_per_capita;
    std::optional<AnnualSeries> employment_rate;
    std::optional<AnnualSeries> unemployment_rate;
    std::vector<LevelShift> adjustments;
    std::string gdp_variant;  // free-text provenance, not interpreted

    [[nodiscard]] const AnnualSeries& rate(RateKind k) const {
        const auto& s = k == RateKind::Employment ? employment_rate : unemployment_rate;
        if (!s) throw ConfigurationError(country + ": no " + std::string(to_string(k)) + " series");
        return *s;
    }
    [[nodiscard]] bool has(RateKind k) const noexcept {
        return k == RateKind::Employment ? employment_rate.has_value() : unemployment_rate.has_value();
    }
};

/// Checks units, ranges and overlap, then applies the level shifts.
[[nodiscard]] inline CountryDataset make_dataset(std::string country, AnnualSeries gdp,
                                                 std::optional<AnnualSeries> employment,
                                                 std::optional<AnnualSeries> unemployment,
                                                 std::vector<LevelShift> shifts = {}, std::string gdp_variant = {}) {
    if (gdp.unit() != Unit::CurrencyPerCapita)
        throw UnitError(country + ": GDP per capita must be currency-per-capita");
    if (!employment && !unemployment)
        throw ConfigurationError(country + ": at least one of employment/unemployment is required");

    const auto check_rate = [&](std::optional<AnnualSeries>& s, RateKind kind) {
        if (!s) return;
        *s = normalize_unit(*s, Unit::PercentPoints);
        for (Year y = s->start_year(); y <= s->end_year(); ++y) {
            const double v = s->at(y);
            if (v < 0.0 || v > 100.0)
                throw DomainError(country + ": " + std::string(to_string(kind)) + " rate " + format_number(v) +
                                      " outside [0, 100] in " + std::to_string(y),
                                  y);
        }
        const YearRange common = intersect(gdp.years(), s->years());
        if (common.size() < kMinOverlapYears)
            throw AlignmentError(country + ": GDP and " + std::string(to_string(kind)) + " overlap by " +
                                 std::to_string(common.size()) + " years, need " +
                                 std::to_string(kMinOverlapYears));
    };
    check_rate(employment, RateKind::Employment);
    check_rate(unemployment, RateKind::Unemployment);

    for (const auto& sh : shifts) {
        auto& target = sh.series == RateKind::Employment ? employment : unemployment;
        if (!target)
            throw ConfigurationError(country + ": level shift targets missing " +
                                     std::string(to_string(sh.series)) + " series");
        *target = apply_level_shift(*target, sh);
    }
    return {std::move(country), std::move(gdp), std::move(employment), std::move(unemployment), std::move(shifts),
            std::move(gdp_variant)};
}

}  // namespace okun
