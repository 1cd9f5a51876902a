#pragma once

#include <string>
#include <vector>

#include "wmsd/config.hpp"
#include "wmsd/geometry.hpp"

namespace wmsd {

/// diverging: blue-white-red anchored at the ends and the middle of the value range.
/// sequential: blue to red.
enum class Palette { diverging, sequential };

/// Diverging for R-like aggregations (R, R^eps, RL, RLpm, RL3), sequential otherwise.
Palette default_palette(const AnySpec& spec);

struct SvgOptions {
    Palette palette = Palette::sequential;
    /// Values mapped onto the palette; anything outside is drawn grey.
    double value_lo = 0.0;
    double value_hi = 1.0;
    /// Draw only the cells inside the WMSD-space.
    bool clip = true;
    std::string title;
    /// Width of the plotting area in pixels; the height follows the window aspect ratio.
    int plot_width = 640;
};

struct LabeledPoint {
    std::string id;
    WmsdPoint point;
};

/// "#rrggbb" for a value quantized to 129 palette levels, or the out-of-range grey.
std::string palette_color(double value, const SvgOptions& options);

/// Layers, bottom to top: field cells, boundary outline, isolines, alternative markers, axes.
/// Output depends only on the inputs.
std::string emit_svg(const ScalarField& field, const Polyline& boundary, const std::vector<LabeledPoint>& points,
                     const std::vector<Polyline>& isolines, const SvgOptions& options);

}  // namespace wmsd
