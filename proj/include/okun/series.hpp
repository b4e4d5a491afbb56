#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "okun/error.hpp"

namespace okun {

using Year = int;

/// Inclusive range of calendar years.
struct YearRange {
    Year first;
    Year last;

    [[nodiscard]] constexpr bool empty() const noexcept { return last < first; }
    [[nodiscard]] constexpr std::size_t size() const noexcept {
        return empty() ? 0 : static_cast<std::size_t>(last - first + 1);
    }
    [[nodiscard]] constexpr bool contains(Year y) const noexcept { return y >= first && y <= last; }
    [[nodiscard]] constexpr bool contains(YearRange r) const noexcept {
        return r.empty() || (contains(r.first) && contains(r.last));
    }
    friend constexpr bool operator==(YearRange, YearRange) = default;
};

enum class Unit { PercentPoints, Fraction, CurrencyPerCapita, LogPoints };

[[nodiscard]] inline std::string_view to_string(Unit u) noexcept {
    switch (u) {
        case Unit::PercentPoints: return "percent-points";
        case Unit::Fraction: return "fraction";
        case Unit::CurrencyPerCapita: return "currency-per-capita";
        case Unit::LogPoints: return "log-points";
    }
    return "unknown";
}

[[nodiscard]] inline Unit unit_from_string(std::string_view s) {
    if (s == "percent-points") return Unit::PercentPoints;
    if (s == "fraction") return Unit::Fraction;
    if (s == "currency-per-capita") return Unit::CurrencyPerCapita;
    if (s == "log-points") return Unit::LogPoints;
    throw UnitError("unknown unit '" + std::string(s) + "'");
}

/**
 * @brief Annual, gap-free sequence of values starting at a calendar year.
 *
 * Years are implicit: value i belongs to start_year + i. Currency series must
 * be strictly positive so that log-ratios are defined. The [0, 100] bound on
 * rate levels is checked at ingestion, since changes and residuals share the
 * percent-point unit and may be negative.
 */
class AnnualSeries {
public:
    AnnualSeries(Year start_year, std::vector<double> values, Unit unit)
        : start_year_(start_year), values_(std::move(values)), unit_(unit) {
        if (values_.empty()) throw InsufficientDataError("series must contain at least one value");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const Year y = start_year_ + static_cast<Year>(i);
            if (!std::isfinite(values_[i]))
                throw DomainError("non-finite value in " + std::to_string(y), y);
            if (unit_ == Unit::CurrencyPerCapita && values_[i] <= 0.0)
                throw DomainError("non-positive currency value in " + std::to_string(y), y);
        }
    }

    [[nodiscard]] Year start_year() const noexcept { return start_year_; }
    [[nodiscard]] Year end_year() const noexcept {
        return start_year_ + static_cast<Year>(values_.size()) - 1;
    }
    [[nodiscard]] YearRange years() const noexcept { return {start_year_, end_year()}; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] Unit unit() const noexcept { return unit_; }
    [[nodiscard]] std::span<const double> values() const& noexcept { return values_; }
    std::span<const double> values() const&& = delete;
    [[nodiscard]] bool contains(Year y) const noexcept { return years().contains(y); }

    [[nodiscard]] double at(Year y) const {
        if (!contains(y))
            throw AlignmentError("year " + std::to_string(y) + " outside series range " +
                                 std::to_string(start_year_) + "-" + std::to_string(end_year()));
        return values_[static_cast<std::size_t>(y - start_year_)];
    }

    [[nodiscard]] double front() const noexcept { return values_.front(); }
    [[nodiscard]] double back() const noexcept { return values_.back(); }

    /// Sub-series covering [r.first, r.last]; the range must lie inside the series.
    [[nodiscard]] AnnualSeries slice(YearRange r) const {
        if (r.empty() || !years().contains(r))
            throw AlignmentError("slice " + std::to_string(r.first) + "-" + std::to_string(r.last) +
                                 " outside series range");
        const auto b = values_.begin() + (r.first - start_year_);
        return {r.first, std::vector<double>(b, b + static_cast<std::ptrdiff_t>(r.size())), unit_};
    }

    /// Same values re-labelled with another unit (no conversion).
    [[nodiscard]] AnnualSeries with_unit(Unit u) const { return {start_year_, values_, u}; }

    friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

private:
    Year start_year_;
    std::vector<double> values_;
    Unit unit_;
};

/// 100 * (ln g_t - ln g_{t-1}): growth in percent per year, first year dropped.
[[nodiscard]] inline AnnualSeries log_growth(const AnnualSeries& g) {
    if (g.size() < 2) throw InsufficientDataError("log_growth needs at least 2 values");
    const auto v = g.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) {
            const Year y = g.start_year() + static_cast<Year>(i);
            throw DomainError("non-positive value " + std::to_string(v[i]) + " in " + std::to_string(y), y);
        }
    }
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = 100.0 * (std::log(v[i]) - std::log(v[i - 1]));
    return {g.start_year() + 1, std::move(out), Unit::PercentPoints};
}

[[nodiscard]] inline AnnualSeries diff(const AnnualSeries& s) {
    if (s.size() < 2) throw InsufficientDataError("diff needs at least 2 values");
    const auto v = s.values();
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = v[i] - v[i - 1];
    return {s.start_year() + 1, std::move(out), s.unit()};
}

/// Integrates increments from an anchor one year before the first increment.
[[nodiscard]] inline AnnualSeries cumsum(const AnnualSeries& increments, Year anchor_year,
                                         double anchor_value) {
    if (anchor_year != increments.start_year() - 1)
        throw AlignmentError("cumsum anchor year " + std::to_string(anchor_year) +
                             " must immediately precede " + std::to_string(increments.start_year()));
    const auto v = increments.values();
    std::vector<double> out;
    out.reserve(v.size() + 1);
    out.push_back(anchor_value);
    for (double x : v) out.push_back(out.back() + x);
    return {anchor_year, std::move(out), increments.unit()};
}

/// Re-indexes s forward by k years: the value observed at t explains year t+k.
[[nodiscard]] inline AnnualSeries lag(const AnnualSeries& s, std::size_t k) {
    if (k >= s.size())
        throw InsufficientDataError("lag " + std::to_string(k) + " not shorter than series length " +
                                    std::to_string(s.size()));
    const auto v = s.values();
    return {s.start_year() + static_cast<Year>(k), std::vector<double>(v.begin(), v.end()), s.unit()};
}

[[nodiscard]] inline YearRange intersect(YearRange a, YearRange b) noexcept {
    return {std::max(a.first, b.first), std::min(a.last, b.last)};
}

/// Trims both series to their common years.
[[nodiscard]] inline std::pair<AnnualSeries, AnnualSeries> align(const AnnualSeries& a,
                                                                 const AnnualSeries& b) {
    const YearRange common = intersect(a.years(), b.years());
    if (common.empty())
        throw AlignmentError("series " + std::to_string(a.start_year()) + "-" + std::to_string(a.end_year()) +
                             " and " + std::to_string(b.start_year()) + "-" + std::to_string(b.end_year()) +
                             " do not overlap");
    return {a.slice(common), b.slice(common)};
}

}  // namespace okun
