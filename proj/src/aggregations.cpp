#include "wmsd/aggregations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "wmsd/error.hpp"
#include "wmsd/geometry.hpp"

namespace wmsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_epsilon(AggregationKind kind, double epsilon, const WeightVector& w, bool force) {
    if (!(epsilon > 0.0) || std::isnan(epsilon)) {
        throw NonPositiveEpsilon("epsilon must be strictly positive");
    }
    if (force || std::isinf(epsilon)) return;
    if (const auto limit = epsilon_limit(kind, w); limit && epsilon <= *limit) {
        throw EpsilonBelowLimit(kind_char(kind), epsilon, *limit);
    }
}

}  // namespace

char kind_char(AggregationKind kind) noexcept {
    switch (kind) {
        case AggregationKind::I: return 'I';
        case AggregationKind::A: return 'A';
        case AggregationKind::R: return 'R';
    }
    return '?';
}

AggregationKind parse_kind(const std::string& text) {
    if (text == "I") return AggregationKind::I;
    if (text == "A") return AggregationKind::A;
    if (text == "R") return AggregationKind::R;
    throw InvalidArgument("unknown aggregation kind '" + text + "' (expected I, A or R)");
}

double AggregationSpec::epsilon() const noexcept {
    if (const auto* e = std::get_if<EllipticAggregation>(&variant)) return e->epsilon;
    if (std::holds_alternative<WmOnlyAggregation>(variant)) return kInf;
    return 1.0;
}

std::optional<AggregationKind> AggregationSpec::kind() const noexcept {
    if (const auto* c = std::get_if<ClassicAggregation>(&variant)) return c->kind;
    if (const auto* e = std::get_if<EllipticAggregation>(&variant)) return e->kind;
    return std::nullopt;
}

bool AggregationSpec::is_wm_only() const noexcept {
    return std::holds_alternative<WmOnlyAggregation>(variant) || std::isinf(epsilon());
}

std::string AggregationSpec::label() const {
    if (std::holds_alternative<WmOnlyAggregation>(variant)) return "M";
    std::string out(1, kind_char(*kind()));
    if (const auto* e = std::get_if<EllipticAggregation>(&variant)) {
        char buf[48];
        if (std::isinf(e->epsilon)) {
            std::snprintf(buf, sizeof buf, "^eps=inf");
        } else {
            std::snprintf(buf, sizeof buf, "^eps=%g", e->epsilon);
        }
        out += buf;
    }
    return out;
}

double agg_classic(AggregationKind kind, const WmsdPoint& p, const WeightVector& w) {
    const double m = w.mean();
    switch (kind) {
        case AggregationKind::I: return 1.0 - std::hypot(m - p.wm, p.wsd) / m;
        case AggregationKind::A: return std::hypot(p.wm, p.wsd) / m;
        case AggregationKind::R: {
            const double d_a = std::hypot(p.wm, p.wsd);
            const double d_i = std::hypot(m - p.wm, p.wsd);
            return d_a / (d_a + d_i);
        }
    }
    return 0.0;
}

double agg_elliptic(AggregationKind kind, double epsilon, const WmsdPoint& p, const WeightVector& w,
                    bool force) {
    check_epsilon(kind, epsilon, w, force);
    if (std::isinf(epsilon)) return agg_M(p);
    return agg_classic(kind, {p.wm, p.wsd / epsilon}, w);
}

std::optional<double> epsilon_limit(AggregationKind kind, const WeightVector& w) {
    if (kind == AggregationKind::R) return std::nullopt;
    const double m = w.mean();
    // WM of the second leftmost vertex: the box vertex with only the smallest weight active.
    const double x1 = w.min() * w.min() * m / w.norm_squared();
    const double num = m * m - (m - 2.0 * x1) * (m - 2.0 * x1);
    const double den = 4.0 * (m * m - (m - x1) * (m - x1));
    return std::sqrt(num / den);
}

double theta_to_epsilon(double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) throw ThetaOutOfRange("theta must lie in (0, 1]");
    if (theta == 1.0) return kInf;
    return theta / (1.0 - theta);
}

void validate(const AggregationSpec& spec, const WeightVector& w) {
    if (const auto* e = std::get_if<EllipticAggregation>(&spec.variant)) {
        check_epsilon(e->kind, e->epsilon, w, spec.force);
    }
}

bool violates_limit(const AggregationSpec& spec, const WeightVector& w) {
    const auto* e = std::get_if<EllipticAggregation>(&spec.variant);
    if (e == nullptr || std::isinf(e->epsilon)) return false;
    const auto limit = epsilon_limit(e->kind, w);
    return limit && e->epsilon <= *limit;
}

Aggregator::Aggregator(AggregationSpec spec, WeightVector w)
    : spec_(std::move(spec)), w_(std::move(w)), epsilon_(spec_.epsilon()), violating_(false) {
    validate(spec_, w_);
    violating_ = violates_limit(spec_, w_);
}

double Aggregator::operator()(const WmsdPoint& p) const noexcept {
    if (spec_.is_wm_only()) return agg_M(p);
    const AggregationKind kind = *spec_.kind();
    if (std::holds_alternative<ClassicAggregation>(spec_.variant)) return agg_classic(kind, p, w_);
    return agg_classic(kind, {p.wm, p.wsd / epsilon_}, w_);
}

double evaluate(const AggregationSpec& spec, const WmsdPoint& p, const WeightVector& w) {
    return Aggregator(spec, w)(p);
}

PropertyReport check_minmax_property(const AggregationSpec& spec, const WeightVector& w,
                                     std::size_t resolution) {
    if (resolution < 32) throw InvalidArgument("property check resolution must be at least 32");
    const Aggregator agg(spec, w);
    const SpaceModel model(w);
    const double m = w.mean();

    std::vector<WmsdPoint> points = model.vertices();
    points.reserve(points.size() + (resolution + 1) * (resolution + 1));
    for (std::size_t j = 0; j <= resolution; ++j) {
        const double wsd = 0.5 * m * static_cast<double>(j) / static_cast<double>(resolution);
        for (std::size_t i = 0; i <= resolution; ++i) {
            const WmsdPoint p{m * static_cast<double>(i) / static_cast<double>(resolution), wsd};
            if (model.contains(p)) points.push_back(p);
        }
    }

    std::vector<double> values(points.size());
    PropertyReport report;
    report.evaluated = points.size();
    report.min = kInf;
    report.max = -kInf;
    for (std::size_t k = 0; k < points.size(); ++k) {
        values[k] = agg(points[k]);
        report.min = std::min(report.min, values[k]);
        report.max = std::max(report.max, values[k]);
    }

    constexpr double kValueTol = 1e-12;
    constexpr std::size_t kMaxListed = 64;
    const double radius = 1e-6 * m;
    bool min_local = true;
    bool max_local = true;
    const auto note = [](std::vector<WmsdPoint>& list, const WmsdPoint& p) {
        if (list.size() >= kMaxListed) return;
        const bool seen = std::any_of(list.begin(), list.end(), [&p](const WmsdPoint& q) {
            return std::abs(q.wm - p.wm) <= 1e-12 && std::abs(q.wsd - p.wsd) <= 1e-12;
        });
        if (!seen) list.push_back(p);
    };
    for (std::size_t k = 0; k < points.size(); ++k) {
        const WmsdPoint& p = points[k];
        if (values[k] <= report.min + kValueTol) {
            if (std::hypot(p.wm, p.wsd) > radius) min_local = false;
            note(report.argmin, p);
        }
        if (values[k] >= report.max - kValueTol) {
            if (std::hypot(p.wm - m, p.wsd) > radius) max_local = false;
            note(report.argmax, p);
        }
    }
    report.satisfied = min_local && max_local;
    return report;
}

}  // namespace wmsd
