#include "wmsd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "wmsd/error.hpp"

namespace wmsd {

namespace {

constexpr double kDedupTol = 1e-9;
constexpr std::size_t kVertexNodeCriteria = 12;

void check_size(const WeightVector& w) {
    if (w.size() > kMaxEnumeratedCriteria) {
        throw TooManyCriteria("vertex enumeration supports at most " + std::to_string(kMaxEnumeratedCriteria) +
                              " criteria; use sampled membership instead");
    }
}

struct SubsetSum {
    double sum;
    std::uint32_t mask;
};

std::vector<SubsetSum> sorted_subset_sums(const WeightVector& w) {
    const std::size_t n = w.size();
    std::vector<SubsetSum> sums(std::size_t{1} << n);
    sums[0] = {0.0, 0};
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t half = std::size_t{1} << j;
        for (std::size_t s = 0; s < half; ++s) {
            sums[half + s] = {sums[s].sum + w[j] * w[j], static_cast<std::uint32_t>(sums[s].mask | (1u << j))};
        }
    }
    std::stable_sort(sums.begin(), sums.end(), [](const SubsetSum& a, const SubsetSum& b) { return a.sum < b.sum; });
    return sums;
}

// Largest WSD over the edges of the box at WM = x. An edge fixes every coordinate except k
// to 0 or w_j (squared-weight sum s over the active set) and lets v_k = t * w_k run over [0, w_k].
// At fixed v.w = X the squared norm is s + (X - s)^2 / w_k^2, convex in s, so only the extreme
// feasible subset sums in [X - w_k^2, X] need to be examined.
std::vector<double> envelope_heights(const WeightVector& w, const std::vector<double>& xs) {
    const double m = w.mean();
    const double nsq = w.norm_squared();
    const auto all = sorted_subset_sums(w);
    std::vector<double> best(xs.size(), 0.0);
    std::vector<double> sums;
    sums.reserve(all.size() / 2);
    for (std::size_t k = 0; k < w.size(); ++k) {
        sums.clear();
        for (const auto& s : all) {
            if ((s.mask & (1u << k)) == 0) sums.push_back(s.sum);
        }
        const double wk2 = w[k] * w[k];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double dot = xs[i] * nsq / m;
            const auto lo = std::lower_bound(sums.begin(), sums.end(), dot - wk2);
            const auto hi = std::upper_bound(sums.begin(), sums.end(), dot);
            if (lo == sums.end() || lo >= hi) continue;
            for (const double s : {*lo, *(hi - 1)}) {
                const double t = std::clamp((dot - s) / wk2, 0.0, 1.0);
                const double vsq = s + t * t * wk2;
                const double d = s + t * wk2;
                const double h2 = (m * m / nsq) * (vsq - d * d / nsq);
                best[i] = std::max(best[i], std::sqrt(std::max(h2, 0.0)));
            }
        }
    }
    return best;
}

}  // namespace

std::vector<WmsdPoint> space_vertices(const WeightVector& w) {
    check_size(w);
    const std::size_t n = w.size();
    const std::size_t count = std::size_t{1} << n;
    std::vector<WmsdPoint> out;
    out.reserve(count);
    std::vector<double> v(n);
    for (std::size_t mask = 0; mask < count; ++mask) {
        for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1u ? w[j] : 0.0;
        out.push_back(wmsd_of(v, w));
    }
    std::sort(out.begin(), out.end(), [](const WmsdPoint& a, const WmsdPoint& b) {
        return a.wm < b.wm || (a.wm == b.wm && a.wsd < b.wsd);
    });
    std::vector<WmsdPoint> unique;
    unique.reserve(out.size());
    for (const auto& p : out) {
        bool dup = false;
        for (auto q = unique.rbegin(); q != unique.rend() && p.wm - q->wm <= kDedupTol; ++q) {
            if (std::abs(q->wsd - p.wsd) <= kDedupTol) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(p);
    }
    return unique;
}

Polyline boundary_polyline(const WeightVector& w, std::size_t resolution) {
    check_size(w);
    if (resolution < 2) throw InvalidArgument("boundary resolution must be at least 2");
    const double m = w.mean();
    std::vector<double> xs;
    xs.reserve(resolution + 1);
    for (std::size_t i = 0; i <= resolution; ++i) {
        xs.push_back(m * static_cast<double>(i) / static_cast<double>(resolution));
    }
    if (w.size() <= kVertexNodeCriteria) {
        for (const auto& p : space_vertices(w)) xs.push_back(p.wm);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return b - a <= kDedupTol; }), xs.end());
    xs.back() = m;

    const auto heights = envelope_heights(w, xs);
    Polyline out;
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({xs[i], heights[i]});
    out.front().wsd = 0.0;
    out.back().wsd = 0.0;
    return out;
}

SpaceModel::SpaceModel(WeightVector w, std::size_t resolution)
    : w_(std::move(w)),
      vertices_(space_vertices(w_)),
      boundary_(boundary_polyline(w_, resolution)),
      tolerance_(1e-9 * w_.mean()) {}

double SpaceModel::envelope_at(double wm) const noexcept {
    if (wm < 0.0 || wm > w_.mean()) return 0.0;
    const auto it = std::lower_bound(boundary_.begin(), boundary_.end(), wm,
                                     [](const WmsdPoint& p, double x) { return p.wm < x; });
    if (it == boundary_.end()) return boundary_.back().wsd;
    if (it == boundary_.begin() || it->wm == wm) return it->wsd;
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double t = (wm - a.wm) / (b.wm - a.wm);
    return a.wsd + t * (b.wsd - a.wsd);
}

bool SpaceModel::contains(const WmsdPoint& p) const noexcept {
    const double m = w_.mean();
    if (!(p.wm >= -tolerance_ && p.wm <= m + tolerance_)) return false;
    if (!(p.wsd >= -tolerance_)) return false;
    return p.wsd <= envelope_at(std::clamp(p.wm, 0.0, m)) + tolerance_;
}

Polyline isoline(AggregationKind kind, double epsilon, double value, const WeightVector& w, std::size_t samples) {
    if (!(value > 0.0 && value < 1.0)) throw ValueOutOfRange("isoline value must lie in (0, 1)");
    if (!(epsilon > 0.0)) throw NonPositiveEpsilon("epsilon must be strictly positive");
    if (!std::isfinite(epsilon)) throw InvalidArgument("isolines of M are not defined by this routine");
    if (samples < 2) throw InvalidArgument("isoline needs at least 2 samples");
    const double m = w.mean();

    if (kind == AggregationKind::R && value == 0.5) {
        Polyline out;
        out.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            out.push_back({0.5 * m, 0.5 * m * static_cast<double>(i) / static_cast<double>(samples - 1)});
        }
        return out;
    }

    double lo = 0.0;
    double hi = m;
    std::function<double(double)> radicand;
    switch (kind) {
        case AggregationKind::I: {
            const double r = m * (1.0 - value);
            lo = m * value;
            radicand = [=](double x) { return r * r - (m - x) * (m - x); };
            break;
        }
        case AggregationKind::A: {
            const double r = m * value;
            hi = r;
            radicand = [=](double x) { return r * r - x * x; };
            break;
        }
        case AggregationKind::R: {
            const double r = value;
            if (r > 0.5) {
                lo = m * r;
            } else {
                hi = m * r;
            }
            radicand = [=](double x) { return (m * r - x) * (m * r - (2.0 * r - 1.0) * x) / (1.0 - 2.0 * r); };
            break;
        }
    }

    Polyline out;
    out.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        out.push_back({x, epsilon * std::sqrt(std::max(radicand(x), 0.0))});
    }
    return out;
}

Window default_window(const WeightVector& w) noexcept { return {0.0, w.mean(), 0.0, 0.5 * w.mean()}; }

WmsdPoint ScalarField::cell_center(std::size_t ix, std::size_t iy) const noexcept {
    const double dx = (window.wm_hi - window.wm_lo) / static_cast<double>(nx);
    const double dy = (window.wsd_hi - window.wsd_lo) / static_cast<double>(ny);
    return {window.wm_lo + (static_cast<double>(ix) + 0.5) * dx, window.wsd_lo + (static_cast<double>(iy) + 0.5) * dy};
}

ScalarField scalar_field(const AggregationSpec& spec, const WeightVector& w, const Window& window, std::size_t nx,
                         std::size_t ny) {
    const Aggregator agg(spec, w);
    const SpaceModel model(w);
    return scalar_field([&agg](const WmsdPoint& p) { return agg(p); }, model, window, nx, ny);
}

ScalarField scalar_field(const std::function<double(const WmsdPoint&)>& f, const SpaceModel& model,
                         const Window& window, std::size_t nx, std::size_t ny) {
    if (nx < kMinFieldResolution || ny < kMinFieldResolution) {
        throw InvalidArgument("field resolution must be at least " + std::to_string(kMinFieldResolution) +
                              " in each direction");
    }
    if (!(window.wm_lo < window.wm_hi && window.wsd_lo < window.wsd_hi)) {
        throw InvalidArgument("field window must have positive extent");
    }
    ScalarField field;
    field.window = window;
    field.nx = nx;
    field.ny = ny;
    field.values.resize(nx * ny);
    field.mask.resize(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const WmsdPoint c = field.cell_center(ix, iy);
            field.values[iy * nx + ix] = f(c);
            field.mask[iy * nx + ix] = model.contains(c) ? 1 : 0;
        }
    }
    return field;
}

}  // namespace wmsd
