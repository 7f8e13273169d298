#pragma once

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "matchstick/model.hpp"

namespace matchstick {

struct SvgStyle {
    double scale = 100.0;         // pixels per unit length
    double vertex_radius = 0.02;  // in units
    std::string gray_stroke = "#808080";
    std::string red_stroke = "#ff0000";
    double margin = 0.05;  // fraction of the bounding box

    void validate() const {
        if (!(scale > 0)) throw std::invalid_argument("svg scale must be positive");
        if (!(margin >= 0)) throw std::invalid_argument("svg margin must be non-negative");
    }
};

namespace detail {

inline std::string fixed(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000") s = "0.0000";
    return s;
}

inline std::string xml_escape(const std::string& in) {
    std::string out;
    for (char c : in) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// SVG 1.1 drawing with the y axis pointing up, as in the source figures.
/// Edges first (sorted), then vertices by index.
inline std::string export_svg(const Graph& g, const SvgStyle& style = {}) {
    style.validate();
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    if (g.vertex_count() > 0) {
        minx = maxx = g.vertex(0).x;
        miny = maxy = g.vertex(0).y;
        for (const auto& p : g.vertices()) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    }
    const double w = maxx - minx, h = maxy - miny;
    // A degenerate box still gets room for the vertex discs.
    const double mx = w > 0 ? w * style.margin : style.vertex_radius * 2;
    const double my = h > 0 ? h * style.margin : style.vertex_radius * 2;
    const double s = style.scale;
    auto px = [&](double x) { return (x - minx + mx) * s; };
    auto py = [&](double y) { return (maxy - y + my) * s; };
    const double vw = (w + 2 * mx) * s, vh = (h + 2 * my) * s;
    using detail::fixed;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(vw) + "\" height=\"" +
           fixed(vh) + "\" viewBox=\"0 0 " + fixed(vw) + " " + fixed(vh) + "\">\n";
    if (!g.meta().id.empty()) out += "<title>" + detail::xml_escape(g.meta().id) + "</title>\n";
    const std::string stroke_width = fixed(style.vertex_radius * s * 0.5);
    out += "<g stroke-width=\"" + stroke_width + "\" stroke-linecap=\"round\">\n";
    for (const auto& e : g.edges()) {
        const Point a = g.vertex(e.u), b = g.vertex(e.v);
        out += "<line x1=\"" + fixed(px(a.x)) + "\" y1=\"" + fixed(py(a.y)) + "\" x2=\"" + fixed(px(b.x)) +
               "\" y2=\"" + fixed(py(b.y)) + "\" stroke=\"" + (g.is_red(e) ? style.red_stroke : style.gray_stroke) +
               "\"/>\n";
    }
    out += "</g>\n<g fill=\"#000000\">\n";
    const std::string r = fixed(style.vertex_radius * s);
    for (const auto& p : g.vertices())
        out += "<circle cx=\"" + fixed(px(p.x)) + "\" cy=\"" + fixed(py(p.y)) + "\" r=\"" + r + "\"/>\n";
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace matchstick
