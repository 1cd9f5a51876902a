#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "wmsd/core.hpp"

namespace wmsd {

enum class LexVariant { IL, AL, RL, RLpm, XLpm, RL3 };

/// Accepts "IL", "AL", "RL", "RLpm", "XLpm" or "RL3".
LexVariant parse_lex_variant(const std::string& text);
std::string lex_variant_name(LexVariant variant);

struct LexSpec {
    LexVariant variant = LexVariant::RL;
    /// Sign parameter of RLpm and XLpm: -1 or +1.
    int p = 1;
    /// Elliptic parameter of the XLpm components.
    double epsilon = 1.0;
    bool force = false;

    static LexSpec IL() { return {LexVariant::IL}; }
    static LexSpec AL() { return {LexVariant::AL}; }
    static LexSpec RL() { return {LexVariant::RL}; }
    static LexSpec RLpm(int p) { return {LexVariant::RLpm, p}; }
    static LexSpec XLpm(int p, double epsilon = 1.0, bool force = false) {
        return {LexVariant::XLpm, p, epsilon, force};
    }
    static LexSpec RL3() { return {LexVariant::RL3}; }

    std::size_t dimension() const noexcept { return variant == LexVariant::RL3 ? 3 : 2; }
    std::string label() const;

    bool operator==(const LexSpec&) const = default;
};

/// Throws InvalidArgument for a bad sign parameter and the elliptic errors for XLpm.
void validate(const LexSpec& spec, const WeightVector& w);

struct LexTuple {
    std::vector<double> components;

    std::size_t size() const noexcept { return components.size(); }
    double operator[](std::size_t i) const { return components[i]; }

    bool operator==(const LexTuple&) const = default;
};

/// Builds the tuple of the given variant. `v` is the weighted-utility vector behind `p`; it is
/// only read by RL3. A WM within `midpoint_tol` of mean(w)/2 counts as the midpoint.
LexTuple lex_tuple(const LexSpec& spec, const WmsdPoint& p, std::span<const double> v, const WeightVector& w,
                   double midpoint_tol = 1e-9);

/// Lexicographic comparison; components within `tol` of each other count as equal.
/// Throws LengthMismatch for tuples of different lengths.
std::weak_ordering lex_compare(const LexTuple& a, const LexTuple& b, double tol = 0.0);

}  // namespace wmsd
