#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wmsd/core.hpp"

namespace wmsd {

/// I: closeness to the ideal, A: distance from the anti-ideal, R: relative closeness.
enum class AggregationKind { I, A, R };

char kind_char(AggregationKind kind) noexcept;
/// Accepts "I", "A" or "R"; throws InvalidArgument otherwise.
AggregationKind parse_kind(const std::string& text);

struct ClassicAggregation {
    AggregationKind kind = AggregationKind::R;
    bool operator==(const ClassicAggregation&) const = default;
};

/// Elliptic aggregation; an infinite epsilon denotes the WM-only limit.
struct EllipticAggregation {
    AggregationKind kind = AggregationKind::R;
    double epsilon = 1.0;
    bool operator==(const EllipticAggregation&) const = default;
};

/// Aggregation M = WM.
struct WmOnlyAggregation {
    bool operator==(const WmOnlyAggregation&) const = default;
};

struct AggregationSpec {
    std::variant<ClassicAggregation, EllipticAggregation, WmOnlyAggregation> variant;
    /// Accept epsilon at or below the operational limit of I/A (the result violates
    /// the maximality/minimality property).
    bool force = false;

    static AggregationSpec classic(AggregationKind kind) { return {ClassicAggregation{kind}, false}; }
    static AggregationSpec elliptic(AggregationKind kind, double epsilon, bool force = false) {
        return {EllipticAggregation{kind, epsilon}, force};
    }
    static AggregationSpec wm_only() { return {WmOnlyAggregation{}, false}; }

    /// 1 for classic, +inf for M.
    double epsilon() const noexcept;
    std::optional<AggregationKind> kind() const noexcept;
    bool is_wm_only() const noexcept;
    std::string label() const;

    bool operator==(const AggregationSpec&) const = default;
};

double agg_classic(AggregationKind kind, const WmsdPoint& p, const WeightVector& w);

/// Evaluates the classic aggregation at (WM, WSD / epsilon): the point lies on the
/// epsilon-scaled isoline of value g exactly when the rescaled point lies on the classic one.
/// Throws NonPositiveEpsilon, or EpsilonBelowLimit for I/A unless forced.
double agg_elliptic(AggregationKind kind, double epsilon, const WmsdPoint& p, const WeightVector& w,
                    bool force = false);

inline double agg_M(const WmsdPoint& p) noexcept { return p.wm; }

/// Lower operational limit E of epsilon for I and A; std::nullopt for R (no limit).
std::optional<double> epsilon_limit(AggregationKind kind, const WeightVector& w);

/// theta / (1 - theta); theta = 1 maps to +inf (aggregation M).
double theta_to_epsilon(double theta);

/// Throws the appropriate Error when the spec is not usable with these weights.
void validate(const AggregationSpec& spec, const WeightVector& w);

/// True when the spec was accepted only because of its force flag.
bool violates_limit(const AggregationSpec& spec, const WeightVector& w);

/// Validated aggregation bound to a weight vector.
class Aggregator {
public:
    Aggregator(AggregationSpec spec, WeightVector w);

    double operator()(const WmsdPoint& p) const noexcept;

    const AggregationSpec& spec() const noexcept { return spec_; }
    const WeightVector& weights() const noexcept { return w_; }
    bool property_violating() const noexcept { return violating_; }

private:
    AggregationSpec spec_;
    WeightVector w_;
    double epsilon_;
    bool violating_;
};

double evaluate(const AggregationSpec& spec, const WmsdPoint& p, const WeightVector& w);

struct PropertyReport {
    bool satisfied = false;
    double min = 0.0;
    double max = 0.0;
    std::vector<WmsdPoint> argmin;
    std::vector<WmsdPoint> argmax;
    /// Number of points evaluated (grid cells inside the space plus vertices).
    std::size_t evaluated = 0;
};

/// Scans a (resolution+1)^2 node grid over the WMSD-space together with all of its vertices.
/// The property holds when the minimum is attained only near (0, 0) and the maximum only near
/// (mean(w), 0). Forced specs are accepted; the check is what exposes them.
PropertyReport check_minmax_property(const AggregationSpec& spec, const WeightVector& w,
                                     std::size_t resolution = 256);

}  // namespace wmsd
