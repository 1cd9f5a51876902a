#include "wmsd/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "wmsd/error.hpp"

namespace wmsd {

void CriterionSpec::validate() const {
    if (range && !(range->lo < range->hi)) {
        throw InvalidArgument("criterion '" + name + "': range lower bound must be below upper bound");
    }
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidArgument("weight vector must not be empty");
    for (double wj : weights_) {
        if (!std::isfinite(wj) || wj <= 0.0) throw InvalidArgument("weights must be finite and strictly positive");
    }
    double sum = 0.0;
    for (double wj : weights_) {
        sum += wj;
        norm_sq_ += wj * wj;
    }
    mean_ = sum / static_cast<double>(weights_.size());
    norm_ = std::sqrt(norm_sq_);
    min_ = *std::min_element(weights_.begin(), weights_.end());
}

WeightVector WeightVector::uniform(std::size_t n) { return WeightVector(std::vector<double>(n, 1.0)); }

DecisionMatrix::DecisionMatrix(std::vector<std::string> alternatives, std::vector<CriterionSpec> criteria,
                               std::vector<double> values)
    : alternatives_(std::move(alternatives)), criteria_(std::move(criteria)), values_(std::move(values)) {
    if (alternatives_.empty()) throw InvalidArgument("decision matrix needs at least one alternative");
    if (criteria_.empty()) throw InvalidArgument("decision matrix needs at least one criterion");
    if (values_.size() != alternatives_.size() * criteria_.size()) {
        throw DimensionMismatch("decision matrix values do not match m x n");
    }
    for (const auto& c : criteria_) c.validate();
    for (double x : values_) {
        if (!std::isfinite(x)) throw InvalidArgument("decision matrix entries must be finite");
    }
}

UtilityMatrix::UtilityMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) throw DimensionMismatch("utility matrix values do not match m x n");
    for (double u : values_) {
        if (!(u >= 0.0 && u <= 1.0)) throw DomainViolation("utility entries must lie in [0, 1]");
    }
}

double minmax_utility(double x, const CriterionSpec& spec, double data_lo, double data_hi,
                      const UtilityOptions& options) {
    const double lo = spec.range ? spec.range->lo : data_lo;
    const double hi = spec.range ? spec.range->hi : data_hi;
    if (!(lo < hi)) {
        if (lo == hi && options.degenerate_substitute) return *options.degenerate_substitute;
        throw DegenerateRange("criterion '" + spec.name + "' has a degenerate value range");
    }
    if (x < lo || x > hi) {
        if (options.on_warning) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "value %g outside [%g, %g], clamped", x, lo, hi);
            options.on_warning("criterion '" + spec.name + "': " + buf);
        }
        x = std::clamp(x, lo, hi);
    }
    const double u = spec.direction == Direction::gain ? (x - lo) / (hi - lo) : (hi - x) / (hi - lo);
    return std::clamp(u, 0.0, 1.0);
}

UtilityMatrix to_utility_space(const DecisionMatrix& dm, const UtilityOptions& options) {
    const std::size_t m = dm.rows();
    const std::size_t n = dm.cols();
    std::vector<double> out(m * n);
    for (std::size_t j = 0; j < n; ++j) {
        double lo = dm.at(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < m; ++i) {
            lo = std::min(lo, dm.at(i, j));
            hi = std::max(hi, dm.at(i, j));
        }
        for (std::size_t i = 0; i < m; ++i) {
            out[i * n + j] = minmax_utility(dm.at(i, j), dm.criteria()[j], lo, hi, options);
        }
    }
    return UtilityMatrix(m, n, std::move(out));
}

std::vector<WeightedUtilityVector> apply_weights(const UtilityMatrix& u, const WeightVector& w) {
    if (u.cols() != w.size()) {
        throw DimensionMismatch("utility matrix has " + std::to_string(u.cols()) + " columns but " +
                                std::to_string(w.size()) + " weights were given");
    }
    std::vector<WeightedUtilityVector> rows;
    rows.reserve(u.rows());
    for (std::size_t i = 0; i < u.rows(); ++i) {
        std::vector<double> v(u.cols());
        for (std::size_t j = 0; j < u.cols(); ++j) v[j] = u.at(i, j) * w[j];
        rows.emplace_back(std::move(v));
    }
    return rows;
}

WmsdPoint wmsd_of(const WeightedUtilityVector& v, const WeightVector& w) { return wmsd_of(v.values(), w); }

WmsdPoint wmsd_of(std::span<const double> v, const WeightVector& w) {
    if (v.size() != w.size()) throw DimensionMismatch("vector and weights differ in length");
    double dot = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double tol = 1e-9 * std::max(1.0, w[j]);
        if (!(v[j] >= -tol && v[j] <= w[j] + tol)) {
            throw DomainViolation("component " + std::to_string(j) + " lies outside [0, w_j]");
        }
        dot += v[j] * w[j];
    }
    // Projection of v onto the ideal direction w; the orthogonal residual carries the dispersion.
    const double t = dot / w.norm_squared();
    double perp_sq = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double r = v[j] - t * w[j];
        perp_sq += r * r;
    }
    return {w.mean() * t, w.mean() / w.norm() * std::sqrt(perp_sq)};
}

ReferenceDistances dist_to_reference(const WmsdPoint& p, const WeightVector& w) {
    const double m = w.mean();
    return {std::hypot(m - p.wm, p.wsd), std::hypot(p.wm, p.wsd)};
}

double round_half_away(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double s = std::abs(x) * scale;
    double whole = std::floor(s);
    if (s - whole >= 0.5 - 1e-9) whole += 1.0;
    return std::copysign(whole / scale, x);
}

WmsdPoint round_wmsd(const WmsdPoint& p, int decimals) {
    return {round_half_away(p.wm, decimals), round_half_away(p.wsd, decimals)};
}

}  // namespace wmsd
