#include "wmsd/lexicographic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wmsd/aggregations.hpp"
#include "wmsd/error.hpp"

namespace wmsd {

LexVariant parse_lex_variant(const std::string& text) {
    if (text == "IL") return LexVariant::IL;
    if (text == "AL") return LexVariant::AL;
    if (text == "RL") return LexVariant::RL;
    if (text == "RLpm") return LexVariant::RLpm;
    if (text == "XLpm") return LexVariant::XLpm;
    if (text == "RL3") return LexVariant::RL3;
    throw InvalidArgument("unknown lexicographic variant '" + text + "'");
}

std::string lex_variant_name(LexVariant variant) {
    switch (variant) {
        case LexVariant::IL: return "IL";
        case LexVariant::AL: return "AL";
        case LexVariant::RL: return "RL";
        case LexVariant::RLpm: return "RLpm";
        case LexVariant::XLpm: return "XLpm";
        case LexVariant::RL3: return "RL3";
    }
    return "?";
}

std::string LexSpec::label() const {
    std::string out = lex_variant_name(variant);
    char buf[64];
    if (variant == LexVariant::RLpm) {
        std::snprintf(buf, sizeof buf, "(p=%+d)", p);
        out += buf;
    } else if (variant == LexVariant::XLpm) {
        std::snprintf(buf, sizeof buf, "(p=%+d,eps=%g)", p, epsilon);
        out += buf;
    }
    return out;
}

void validate(const LexSpec& spec, const WeightVector& w) {
    if ((spec.variant == LexVariant::RLpm || spec.variant == LexVariant::XLpm) && spec.p != 1 && spec.p != -1) {
        throw InvalidArgument("lexicographic sign parameter p must be -1 or +1");
    }
    if (spec.variant == LexVariant::XLpm) {
        validate(AggregationSpec::elliptic(AggregationKind::I, spec.epsilon, spec.force), w);
        validate(AggregationSpec::elliptic(AggregationKind::A, spec.epsilon, spec.force), w);
    }
}

LexTuple lex_tuple(const LexSpec& spec, const WmsdPoint& p, std::span<const double> v, const WeightVector& w,
                   double midpoint_tol) {
    validate(spec, w);
    const double half = 0.5 * w.mean();
    // -1 below the midpoint, 0 at it, +1 above.
    const int side = std::abs(p.wm - half) <= midpoint_tol ? 0 : (p.wm < half ? -1 : 1);

    switch (spec.variant) {
        case LexVariant::IL: return {{p.wm, -p.wsd}};
        case LexVariant::AL: return {{p.wm, p.wsd}};
        case LexVariant::RL: return {{p.wm, side == 0 ? 0.0 : -side * p.wsd}};
        case LexVariant::RLpm: return {{p.wm, side == 0 ? 0.0 : -side * spec.p * p.wsd}};
        case LexVariant::XLpm: {
            const double i = agg_elliptic(AggregationKind::I, spec.epsilon, p, w, spec.force);
            const double a = agg_elliptic(AggregationKind::A, spec.epsilon, p, w, spec.force);
            return spec.p < 0 ? LexTuple{{i, a}} : LexTuple{{a, i}};
        }
        case LexVariant::RL3: {
            if (v.size() != w.size()) throw DimensionMismatch("RL3 needs the weighted-utility vector of the point");
            const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            return {{p.wm, *hi, -*lo}};
        }
    }
    return {};
}

std::weak_ordering lex_compare(const LexTuple& a, const LexTuple& b, double tol) {
    if (a.size() != b.size()) throw LengthMismatch("cannot compare tuples of different lengths");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) <= tol) continue;
        return a[i] < b[i] ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

}  // namespace wmsd
