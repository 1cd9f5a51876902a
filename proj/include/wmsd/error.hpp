#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmsd {

/// Broad failure class; drives CLI exit codes (2 / 3) and HTTP statuses (422 / 400).
enum class ErrorCategory { validation, parse };

class Error : public std::runtime_error {
public:
    Error(std::string name, std::string message, ErrorCategory category = ErrorCategory::validation)
        : std::runtime_error(message), name_(std::move(name)), category_(category) {}

    /// Stable taxonomy name, e.g. "EpsilonBelowLimit".
    const std::string& name() const noexcept { return name_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string name_;
    ErrorCategory category_;
};

#define WMSD_DEFINE_ERROR(Name)                                                   \
    class Name : public Error {                                                    \
    public:                                                                        \
        explicit Name(const std::string& message) : Error(#Name, message) {}      \
    }

WMSD_DEFINE_ERROR(InvalidArgument);
WMSD_DEFINE_ERROR(DegenerateRange);
WMSD_DEFINE_ERROR(DimensionMismatch);
WMSD_DEFINE_ERROR(DomainViolation);
WMSD_DEFINE_ERROR(NonPositiveEpsilon);
WMSD_DEFINE_ERROR(ThetaOutOfRange);
WMSD_DEFINE_ERROR(TooManyCriteria);
WMSD_DEFINE_ERROR(ValueOutOfRange);
WMSD_DEFINE_ERROR(LengthMismatch);
WMSD_DEFINE_ERROR(MixedScoreKinds);

#undef WMSD_DEFINE_ERROR

class EpsilonBelowLimit : public Error {
public:
    EpsilonBelowLimit(char kind, double epsilon, double limit);

    char kind() const noexcept { return kind_; }
    double epsilon() const noexcept { return epsilon_; }
    double limit() const noexcept { return limit_; }

private:
    char kind_;
    double epsilon_;
    double limit_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& reason);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class HeaderMismatch : public Error {
public:
    explicit HeaderMismatch(const std::string& message)
        : Error("HeaderMismatch", message, ErrorCategory::parse) {}
};

/// An input file or stream could not be read.
class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("IoError", message, ErrorCategory::parse) {}
};

}  // namespace wmsd
