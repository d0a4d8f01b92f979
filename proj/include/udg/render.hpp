#pragma once

// SVG and TikZ drawings of embedded graphs: unit edges solid, uniform scale.

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "udg/embed.hpp"

namespace udg {

enum class RenderFormat { svg, tikz };

inline RenderFormat parse_render_format(std::string_view s) {
  if (s == "svg") return RenderFormat::svg;
  if (s == "tikz") return RenderFormat::tikz;
  throw std::invalid_argument("unknown render format '" + std::string(s) + "'");
}

struct Drawing {
  std::vector<Vec2> coords;
  std::vector<Edge> edges;
  std::vector<std::string> labels;  // optional, one per point
};

namespace detail {

inline std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

}  // namespace detail

inline Drawing drawing_of(const PointSet& ps) { return {ps.coords, ps.unit_pairs, ps.ids}; }

inline Drawing drawing_of(const SmallGraph& g, const std::vector<Vec2>& coords) {
  if (static_cast<int>(coords.size()) != g.order()) throw std::invalid_argument("render: missing coordinates");
  return {coords, g.edges(), {}};
}

/// `scale` is the drawn length of a unit edge (pixels for svg, cm for tikz).
inline std::string render(const Drawing& d, RenderFormat fmt, double scale = 0) {
  if (d.coords.empty()) throw std::invalid_argument("render: missing coordinates");
  for (const auto& [u, v] : d.edges)
    if (u < 0 || v < 0 || u >= static_cast<int>(d.coords.size()) || v >= static_cast<int>(d.coords.size()))
      throw std::invalid_argument("render: edge refers to a missing point");
  double x0 = d.coords[0].x, x1 = x0, y0 = d.coords[0].y, y1 = y0;
  for (const auto& p : d.coords) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  std::string out;
  if (fmt == RenderFormat::svg) {
    if (scale <= 0) scale = 100;
    const double pad = 0.25 * scale;
    const double w = (x1 - x0) * scale + 2 * pad, h = (y1 - y0) * scale + 2 * pad;
    // SVG y grows downward.
    auto sx = [&](double x) { return detail::fixed((x - x0) * scale + pad, 2); };
    auto sy = [&](double y) { return detail::fixed((y1 - y) * scale + pad, 2); };
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fixed(w, 2) + "\" height=\"" +
           detail::fixed(h, 2) + "\">\n";
    for (const auto& [u, v] : d.edges) {
      out += "  <line x1=\"" + sx(d.coords[u].x) + "\" y1=\"" + sy(d.coords[u].y) + "\" x2=\"" + sx(d.coords[v].x) +
             "\" y2=\"" + sy(d.coords[v].y) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    for (std::size_t i = 0; i < d.coords.size(); ++i) {
      out += "  <circle cx=\"" + sx(d.coords[i].x) + "\" cy=\"" + sy(d.coords[i].y) + "\" r=\"4\" fill=\"black\"";
      out += i < d.labels.size() ? "><title>" + d.labels[i] + "</title></circle>\n" : "/>\n";
    }
    out += "</svg>\n";
  } else {
    if (scale <= 0) scale = 2;
    out += "\\begin{tikzpicture}[x=" + detail::fixed(scale, 2) + "cm,y=" + detail::fixed(scale, 2) + "cm]\n";
    for (std::size_t i = 0; i < d.coords.size(); ++i) {
      out += "  \\coordinate (v" + std::to_string(i) + ") at (" + detail::fixed(d.coords[i].x) + "," +
             detail::fixed(d.coords[i].y) + ");\n";
    }
    for (const auto& [u, v] : d.edges)
      out += "  \\draw (v" + std::to_string(u) + ") -- (v" + std::to_string(v) + ");\n";
    for (std::size_t i = 0; i < d.coords.size(); ++i)
      out += "  \\fill (v" + std::to_string(i) + ") circle (1.5pt);\n";
    out += "\\end{tikzpicture}\n";
  }
  return out;
}

}  // namespace udg
