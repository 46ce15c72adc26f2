#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "csv.hpp"

namespace filter_ergodics {

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Single-series SVG polyline. Every point is plotted (no resampling); the y
/// axis spans [min(0, y_min), max(y_max, y_min + 1e-9)].
inline std::string render_svg(const LineChart& c) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
  const double x_min = c.xs.empty() ? 0.0 : *std::min_element(c.xs.begin(), c.xs.end());
  double x_max = c.xs.empty() ? 1.0 : *std::max_element(c.xs.begin(), c.xs.end());
  double y_min = c.ys.empty() ? 0.0 : std::min(0.0, *std::min_element(c.ys.begin(), c.ys.end()));
  double y_max = c.ys.empty() ? 1.0 : *std::max_element(c.ys.begin(), c.ys.end());
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min + 1e-9) y_max = y_min + 1.0;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (width - left - right); };
  auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * (height - top - bottom); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  o << "<!-- x axis: " << c.x_label << " from " << format_double(x_min) << " to " << format_double(x_max)
    << "; y axis: " << c.y_label << " from " << format_double(y_min) << " to " << format_double(y_max)
    << "; all " << c.xs.size() << " points drawn as one solid polyline -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
    << c.title << "</text>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
    << height - bottom << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    o << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(yv).substr(0, 6)
      << "</text>\n";
    o << "<text x=\"" << px(xv) << "\" y=\"" << height - bottom + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(xv).substr(0, 6)
      << "</text>\n";
  }
  o << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << c.x_label << "</text>\n";
  o << "<text x=\"16\" y=\"" << height / 2 << "\" transform=\"rotate(-90 16 " << height / 2
    << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << c.y_label << "</text>\n";
  o << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < c.xs.size() && i < c.ys.size(); ++i) {
    if (i) o << ' ';
    o << format_double(px(c.xs[i])) << ',' << format_double(py(c.ys[i]));
  }
  o << "\"/>\n</svg>\n";
  return o.str();
}

}  // namespace filter_ergodics
