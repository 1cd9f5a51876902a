#include "wmsd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wmsd {

namespace {

constexpr const char* kOutOfRange = "#9e9e9e";

struct Rgb {
    double r, g, b;
};

constexpr Rgb kBlue{59, 76, 192};
constexpr Rgb kWhite{247, 247, 247};
constexpr Rgb kRed{180, 4, 38};

Rgb mix(const Rgb& a, const Rgb& b, double t) {
    return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

std::string hex(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c.r)),
                  static_cast<int>(std::lround(c.g)), static_cast<int>(std::lround(c.b)));
    return buf;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

bool r_like(const AnySpec& spec) {
    if (const auto* a = std::get_if<AggregationSpec>(&spec)) return a->kind() == AggregationKind::R;
    const auto v = std::get<LexSpec>(spec).variant;
    return v == LexVariant::RL || v == LexVariant::RLpm || v == LexVariant::RL3;
}

}  // namespace

Palette default_palette(const AnySpec& spec) { return r_like(spec) ? Palette::diverging : Palette::sequential; }

std::string palette_color(double value, const SvgOptions& options) {
    const double span = options.value_hi - options.value_lo;
    const double t = (value - options.value_lo) / span;
    constexpr double slack = 1e-12;
    if (!std::isfinite(t) || t < -slack || t > 1.0 + slack) return kOutOfRange;
    constexpr double kLevels = 128.0;
    const double u = std::round(std::clamp(t, 0.0, 1.0) * kLevels) / kLevels;
    if (options.palette == Palette::sequential) return hex(mix(kBlue, kRed, u));
    return u < 0.5 ? hex(mix(kBlue, kWhite, 2.0 * u)) : hex(mix(kWhite, kRed, 2.0 * u - 1.0));
}

std::string emit_svg(const ScalarField& field, const Polyline& boundary, const std::vector<LabeledPoint>& points,
                     const std::vector<Polyline>& isolines, const SvgOptions& options) {
    const Window& win = field.window;
    const double left = 56.0;
    const double right = 24.0;
    const double top = options.title.empty() ? 16.0 : 36.0;
    const double bottom = 44.0;
    const double pw = static_cast<double>(std::max(options.plot_width, 64));
    const double scale = pw / (win.wm_hi - win.wm_lo);
    const double ph = scale * (win.wsd_hi - win.wsd_lo);
    const double width = left + pw + right;
    const double height = top + ph + bottom;
    const auto sx = [&](double wm) { return left + (wm - win.wm_lo) * scale; };
    const auto sy = [&](double wsd) { return top + ph - (wsd - win.wsd_lo) * scale; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<defs><clipPath id=\"plot\"><rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\"/></clipPath></defs>\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!options.title.empty()) {
        out += "<text x=\"" + num(left + pw / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" +
               escape_xml(options.title) + "</text>\n";
    }

    // Field: horizontal runs of equal colour per raster row.
    out += "<g id=\"field\" shape-rendering=\"crispEdges\">\n";
    const double cw = pw / static_cast<double>(field.nx);
    const double ch = ph / static_cast<double>(field.ny);
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
        const double y = top + ph - static_cast<double>(iy + 1) * ch;
        std::size_t ix = 0;
        while (ix < field.nx) {
            const bool visible = !options.clip || field.inside(ix, iy);
            if (!visible || !std::isfinite(field.at(ix, iy))) {
                ++ix;
                continue;
            }
            const std::string color = palette_color(field.at(ix, iy), options);
            std::size_t end = ix + 1;
            while (end < field.nx && (!options.clip || field.inside(end, iy)) && std::isfinite(field.at(end, iy)) &&
                   palette_color(field.at(end, iy), options) == color) {
                ++end;
            }
            out += "<rect x=\"" + num(left + static_cast<double>(ix) * cw) + "\" y=\"" + num(y) + "\" width=\"" +
                   num(static_cast<double>(end - ix) * cw) + "\" height=\"" + num(ch) + "\" fill=\"" + color +
                   "\"/>\n";
            ix = end;
        }
    }
    out += "</g>\n";

    if (!boundary.empty()) {
        out += "<path id=\"boundary\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" clip-path=\"url(#plot)\" d=\"";
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            out += (i == 0 ? "M" : " L") + num(sx(boundary[i].wm)) + "," + num(sy(boundary[i].wsd));
        }
        out += " Z\"/>\n";
    }

    out += "<g id=\"isolines\" fill=\"none\" stroke=\"#202020\" stroke-width=\"1\" stroke-dasharray=\"4 3\" "
           "clip-path=\"url(#plot)\">\n";
    for (const auto& line : isolines) {
        if (line.size() < 2) continue;
        out += "<polyline points=\"";
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i > 0) out += ' ';
            out += num(sx(line[i].wm)) + "," + num(sy(line[i].wsd));
        }
        out += "\"/>\n";
    }
    out += "</g>\n";

    out += "<g id=\"alternatives\">\n";
    for (const auto& lp : points) {
        const double x = sx(lp.point.wm);
        const double y = sy(lp.point.wsd);
        out += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) +
               "\" r=\"3.5\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(x + 5) + "\" y=\"" + num(y - 5) + "\">" + escape_xml(lp.id) + "</text>\n";
    }
    out += "</g>\n";

    out += "<g id=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\"/>\n";
    constexpr int kTicks = 5;
    for (int k = 0; k <= kTicks; ++k) {
        const double wm = win.wm_lo + (win.wm_hi - win.wm_lo) * k / kTicks;
        const double x = sx(wm);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(top + ph + 4) + "\"/>\n";
        out += "<text stroke=\"none\" x=\"" + num(x) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
               num(wm) + "</text>\n";
        const double wsd = win.wsd_lo + (win.wsd_hi - win.wsd_lo) * k / kTicks;
        const double y = sy(wsd);
        out += "<line x1=\"" + num(left - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) + "\" y2=\"" + num(y) +
               "\"/>\n";
        out += "<text stroke=\"none\" x=\"" + num(left - 7) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
               num(wsd) + "</text>\n";
    }
    out += "<text stroke=\"none\" x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 8) +
           "\" text-anchor=\"middle\">WM</text>\n";
    out += "<text stroke=\"none\" x=\"14\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           num(top + ph / 2) + ")\">WSD</text>\n";
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace wmsd
