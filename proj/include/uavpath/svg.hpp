#ifndef UAVPATH_SVG_HPP_
#define UAVPATH_SVG_HPP_

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "uavpath/pareto.hpp"

namespace uavpath::svg {

struct Series {
  std::string name;
  std::vector<Point2> points;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::string annotation;
  bool lines = false;  ///< connect points of a series in order
};

namespace detail {

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % 8];
}

inline std::string escape(const std::string& s) {
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

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace detail

/// Static scatter or line chart. Markers are `<circle class="pt">`, one per
/// point; each series gets one legend entry (`<g class="legend-entry">`).
inline std::string render(const Chart& chart) {
  constexpr double W = 640, H = 480, L = 70, R = 170, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : chart.series) {
    for (const auto& p : s.points) {
      x0 = std::min(x0, p[0]);
      x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]);
      y1 = std::max(y1, p[1]);
    }
  }
  if (!(x1 >= x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  using detail::num;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + detail::escape(chart.title) + "</text>\n";
  out += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) + "\" y2=\"" + num(H - B) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" + num(H - B) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
    out += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(H - B + 16) + "\" text-anchor=\"middle\" font-size=\"10\">" +
           detail::tick(xv) + "</text>\n";
    out += "<text x=\"" + num(L - 6) + "\" y=\"" + num(sy(yv) + 3) + "\" text-anchor=\"end\" font-size=\"10\">" +
           detail::tick(yv) + "</text>\n";
  }
  out += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\" font-size=\"12\">" +
         detail::escape(chart.x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + num((T + H - B) / 2) + "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
         num((T + H - B) / 2) + ")\">" + detail::escape(chart.y_label) + "</text>\n";
  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const auto& series = chart.series[s];
    const char* color = detail::palette(s);
    out += "<g class=\"series\" fill=\"" + std::string(color) + "\">\n";
    if (chart.lines && series.points.size() > 1) {
      out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"";
      for (const auto& p : series.points) out += num(sx(p[0])) + "," + num(sy(p[1])) + " ";
      out += "\"/>\n";
    }
    for (const auto& p : series.points) {
      out += "<circle class=\"pt\" cx=\"" + num(sx(p[0])) + "\" cy=\"" + num(sy(p[1])) + "\" r=\"3\"/>\n";
    }
    out += "</g>\n";
    const double ly = T + 10 + 18.0 * static_cast<double>(s);
    out += "<g class=\"legend-entry\"><rect x=\"" + num(W - R + 14) + "\" y=\"" + num(ly - 8) + "\" width=\"10\" height=\"10\" fill=\"" +
           color + "\"/><text x=\"" + num(W - R + 30) + "\" y=\"" + num(ly + 1) + "\" font-size=\"11\">" +
           detail::escape(series.name) + "</text></g>\n";
  }
  if (!chart.annotation.empty()) {
    out += "<text class=\"annotation\" x=\"" + num(L + 10) + "\" y=\"" + num(T + 14) + "\" font-size=\"12\">" +
           detail::escape(chart.annotation) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace uavpath::svg

#endif  // UAVPATH_SVG_HPP_
