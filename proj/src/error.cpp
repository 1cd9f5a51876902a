#include "wmsd/error.hpp"

#include <cstdio>

namespace wmsd {

namespace {

std::string epsilon_message(char kind, double epsilon, double limit) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "epsilon %.6g is not above the operational limit E = %.6g for aggregation %c",
                  epsilon, limit, kind);
    return buf;
}

std::string parse_message(std::size_t line, std::size_t column, const std::string& reason) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason;
}

}  // namespace

EpsilonBelowLimit::EpsilonBelowLimit(char kind, double epsilon, double limit)
    : Error("EpsilonBelowLimit", epsilon_message(kind, epsilon, limit)),
      kind_(kind),
      epsilon_(epsilon),
      limit_(limit) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& reason)
    : Error("ParseError", parse_message(line, column, reason), ErrorCategory::parse),
      line_(line),
      column_(column) {}

}  // namespace wmsd
