#pragma once

// WMSD-space geometry: vertices, upper boundary, membership, isolines and rasterized fields.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "wmsd/aggregations.hpp"
#include "wmsd/core.hpp"

namespace wmsd {

using Polyline = std::vector<WmsdPoint>;

inline constexpr std::size_t kMaxEnumeratedCriteria = 20;
inline constexpr std::size_t kDefaultBoundaryResolution = 1024;

/// Images of all 2^n vertices of the weighted utility box, deduplicated (1e-9) and
/// sorted by WM. First is (0, 0), last is (mean(w), 0).
std::vector<WmsdPoint> space_vertices(const WeightVector& w);

/// Upper envelope of the images of the box's 1-dimensional edges, evaluated exactly at
/// `resolution + 1` evenly spaced WM nodes and at every vertex. Runs from (0, 0) to (mean(w), 0).
Polyline boundary_polyline(const WeightVector& w, std::size_t resolution = kDefaultBoundaryResolution);

class SpaceModel {
public:
    explicit SpaceModel(WeightVector w, std::size_t resolution = kDefaultBoundaryResolution);

    const WeightVector& weights() const noexcept { return w_; }
    const std::vector<WmsdPoint>& vertices() const noexcept { return vertices_; }
    const Polyline& boundary() const noexcept { return boundary_; }

    /// Boundary height at wm (linear between polyline nodes); 0 outside [0, mean(w)].
    double envelope_at(double wm) const noexcept;

    /// On or below the boundary, inside the WM range and above the WM axis, within tolerance.
    bool contains(const WmsdPoint& p) const noexcept;

    double tolerance() const noexcept { return tolerance_; }

private:
    WeightVector w_;
    std::vector<WmsdPoint> vertices_;
    Polyline boundary_;
    double tolerance_;
};

inline bool contains(const WmsdPoint& p, const SpaceModel& model) noexcept { return model.contains(p); }

/// WSD(WM) curve of the given aggregation value, sampled at `samples` WM positions over the
/// part of [0, mean(w)] where the curve exists. For R at value 1/2 this is the vertical
/// segment WM = mean(w)/2 from WSD 0 up to mean(w)/2.
Polyline isoline(AggregationKind kind, double epsilon, double value, const WeightVector& w,
                 std::size_t samples = 256);

struct Window {
    double wm_lo = 0.0;
    double wm_hi = 1.0;
    double wsd_lo = 0.0;
    double wsd_hi = 0.5;

    bool operator==(const Window&) const = default;
};

/// [0, mean(w)] x [0, mean(w)/2], the bounding box of the WMSD-space.
Window default_window(const WeightVector& w) noexcept;

struct ScalarField {
    Window window;
    std::size_t nx = 0;
    std::size_t ny = 0;
    /// Row-major, row 0 at wsd_lo: index iy * nx + ix.
    std::vector<double> values;
    std::vector<std::uint8_t> mask;

    double at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
    bool inside(std::size_t ix, std::size_t iy) const { return mask[iy * nx + ix] != 0; }
    WmsdPoint cell_center(std::size_t ix, std::size_t iy) const noexcept;
};

inline constexpr std::size_t kMinFieldResolution = 16;

/// Evaluates the aggregation at every cell centre, inside and outside the space.
ScalarField scalar_field(const AggregationSpec& spec, const WeightVector& w, const Window& window,
                         std::size_t nx, std::size_t ny);

/// Same raster for an arbitrary function of the WMSD point (e.g. a lexicographic component).
ScalarField scalar_field(const std::function<double(const WmsdPoint&)>& f, const SpaceModel& model,
                         const Window& window, std::size_t nx, std::size_t ny);

}  // namespace wmsd
