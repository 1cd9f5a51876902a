#pragma once

// Decision matrices and the criterion -> utility -> weighted-utility pipeline,
// plus the (WM, WSD) decomposition of weighted-utility vectors.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wmsd {

enum class Direction { gain, cost };

struct ValueRange {
    double lo = 0.0;
    double hi = 1.0;

    bool operator==(const ValueRange&) const = default;
};

struct CriterionSpec {
    std::string name;
    Direction direction = Direction::gain;
    std::optional<ValueRange> range;

    /// Throws InvalidArgument when an explicit range is not strictly increasing.
    void validate() const;

    bool operator==(const CriterionSpec&) const = default;
};

/// Strictly positive criterion weights with cached mean and norm.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights);
    static WeightVector uniform(std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t j) const { return weights_[j]; }
    std::span<const double> values() const noexcept { return weights_; }

    double mean() const noexcept { return mean_; }
    double norm() const noexcept { return norm_; }
    double norm_squared() const noexcept { return norm_sq_; }
    double min() const noexcept { return min_; }

private:
    std::vector<double> weights_;
    double mean_ = 0.0;
    double norm_ = 0.0;
    double norm_sq_ = 0.0;
    double min_ = 0.0;
};

/// Row-major m x n matrix of criterion values.
class DecisionMatrix {
public:
    DecisionMatrix(std::vector<std::string> alternatives, std::vector<CriterionSpec> criteria,
                   std::vector<double> values);

    std::size_t rows() const noexcept { return alternatives_.size(); }
    std::size_t cols() const noexcept { return criteria_.size(); }
    const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
    const std::vector<CriterionSpec>& criteria() const noexcept { return criteria_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * cols() + j]; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values_).subspan(i * cols(), cols());
    }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const DecisionMatrix&) const = default;

private:
    std::vector<std::string> alternatives_;
    std::vector<CriterionSpec> criteria_;
    std::vector<double> values_;
};

/// Row-major m x n matrix with every entry in [0, 1].
class UtilityMatrix {
public:
    UtilityMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values_).subspan(i * cols_, cols_);
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

/// A point of the weight-scaled utility space: 0 <= v_j <= w_j.
class WeightedUtilityVector {
public:
    WeightedUtilityVector() = default;
    explicit WeightedUtilityVector(std::vector<double> v) : v_(std::move(v)) {}

    std::size_t size() const noexcept { return v_.size(); }
    double operator[](std::size_t j) const { return v_[j]; }
    std::span<const double> values() const noexcept { return v_; }

private:
    std::vector<double> v_;
};

struct WmsdPoint {
    double wm = 0.0;
    double wsd = 0.0;

    bool operator==(const WmsdPoint&) const = default;
};

struct ReferenceDistances {
    double to_ideal = 0.0;
    double to_anti_ideal = 0.0;
};

struct UtilityOptions {
    /// When set, a constant (zero-spread) data-driven range yields this utility instead of failing.
    std::optional<double> degenerate_substitute;
    /// Receives one message per clamped out-of-range value.
    std::function<void(const std::string&)> on_warning;
};

/// Min-max utility of x. The effective range is spec.range when present, else [data_lo, data_hi].
/// Values outside an explicit range are clamped.
double minmax_utility(double x, const CriterionSpec& spec, double data_lo, double data_hi,
                      const UtilityOptions& options = {});

UtilityMatrix to_utility_space(const DecisionMatrix& dm, const UtilityOptions& options = {});

std::vector<WeightedUtilityVector> apply_weights(const UtilityMatrix& u, const WeightVector& w);

WmsdPoint wmsd_of(const WeightedUtilityVector& v, const WeightVector& w);
WmsdPoint wmsd_of(std::span<const double> v, const WeightVector& w);

ReferenceDistances dist_to_reference(const WmsdPoint& p, const WeightVector& w);

/// Decimal rounding, half away from zero; ties are detected on the decimal representation
/// so that e.g. 0.945 rounds to 0.95 even though its binary value is slightly below.
double round_half_away(double x, int decimals);

WmsdPoint round_wmsd(const WmsdPoint& p, int decimals = 2);

}  // namespace wmsd
