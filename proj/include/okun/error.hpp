#pragma once

#include <stdexcept>
#include <string>

namespace okun {

/// Base of every error raised by the library. Carries a stable category name
/// so the CLI can emit structured errors.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& what)
        : std::runtime_error(what), category_(std::move(category)) {}

    [[nodiscard]] const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

/// Too few observations for the requested operation.
class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& what) : Error("insufficient_data", what) {}
};

/// A value outside the mathematical domain (e.g. log of a non-positive number).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what, int year = 0)
        : Error("domain", what), year_(year) {}
    [[nodiscard]] int year() const noexcept { return year_; }

private:
    int year_;
};

/// Year ranges that do not line up.
class AlignmentError : public Error {
public:
    explicit AlignmentError(const std::string& what) : Error("alignment", what) {}
};

class UnitError : public Error {
public:
    explicit UnitError(const std::string& what) : Error("unit", what) {}
};

/// CSV ingestion failure. `kind` distinguishes the failure; `line` is 1-based
/// (0 when the error is not tied to a line, e.g. an empty file).
class ParseError : public Error {
public:
    enum class Kind { Empty, Unparsable, DuplicateYear, Gap };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : Error("parse", what), kind_(kind), line_(line) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

/// Normal matrix of a least-squares problem is (numerically) singular.
class RankDeficiencyError : public Error {
public:
    explicit RankDeficiencyError(const std::string& what) : Error("rank_deficiency", what) {}
};

/// Model that cannot answer the question asked (zero slope for a threshold).
class DegenerateModelError : public Error {
public:
    explicit DegenerateModelError(const std::string& what) : Error("degenerate_model", what) {}
};

/// Statistic undefined for the data (zero variance).
class DegenerateStatisticsError : public Error {
public:
    explicit DegenerateStatisticsError(const std::string& what)
        : Error("degenerate_statistics", what) {}
};

/// Invalid configuration or manifest content.
class ConfigurationError : public Error {
public:
    explicit ConfigurationError(const std::string& what) : Error("configuration", what) {}
};

}  // namespace okun
