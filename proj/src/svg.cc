//
// Copyright 2026 The gdpaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "gdpaudit/svg.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gdpaudit::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 700.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 486.0;
constexpr int kTicks = 5;

std::string Num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::ofstream OpenSvg(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  return out;
}

void CloseSvg(std::ofstream& out, const std::string& path) {
  out << "</svg>\n";
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

void DrawTitle(std::ofstream& out, const std::string& title) {
  out << "<text x=\"" << Num((kLeft + kRight) / 2) << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << Escape(title) << "</text>\n";
}

}  // namespace

void WriteLinePlot(const std::string& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const std::vector<Series>& series, double x_min,
                   double x_max, double y_min, double y_max) {
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw std::invalid_argument("plot ranges must be nonempty");
  }
  auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  auto py = [&](double y) {
    return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::ofstream out = OpenSvg(path);
  DrawTitle(out, title);

  for (int t = 0; t <= kTicks; ++t) {
    const double fx = x_min + (x_max - x_min) * t / kTicks;
    const double fy = y_min + (y_max - y_min) * t / kTicks;
    const std::string gx = Num(px(fx));
    const std::string gy = Num(py(fy));
    out << "<line x1=\"" << gx << "\" y1=\"" << Num(kTop) << "\" x2=\"" << gx
        << "\" y2=\"" << Num(kBottom)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << gy << "\" x2=\""
        << Num(kRight) << "\" y2=\"" << gy
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << gx << "\" y=\"" << Num(kBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << Num(fx) << "</text>\n";
    out << "<text x=\"" << Num(kLeft - 8) << "\" y=\"" << Num(py(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << Num(fy) << "</text>\n";
  }
  out << "<rect x=\"" << Num(kLeft) << "\" y=\"" << Num(kTop) << "\" width=\""
      << Num(kRight - kLeft) << "\" height=\"" << Num(kBottom - kTop)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << Num((kLeft + kRight) / 2) << "\" y=\""
      << Num(kBottom + 40)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << Escape(x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << Num((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 20 "
      << Num((kTop + kBottom) / 2) << ")\">" << Escape(y_label)
      << "</text>\n";

  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    bool first = true;
    for (const auto& [x, y] : s.points) {
      const double cx = std::clamp(x, x_min, x_max);
      const double cy = std::clamp(y, y_min, y_max);
      if (!first) out << ' ';
      out << Num(px(cx)) << ',' << Num(py(cy));
      first = false;
    }
    out << "\"/>\n";
  }

  double legend_y = kTop + 18;
  for (const auto& s : series) {
    const double lx = kRight - 190;
    out << "<line x1=\"" << Num(lx) << "\" y1=\"" << Num(legend_y - 4)
        << "\" x2=\"" << Num(lx + 28) << "\" y2=\"" << Num(legend_y - 4)
        << "\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
    out << "<text x=\"" << Num(lx + 34) << "\" y=\"" << Num(legend_y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << Escape(s.label) << "</text>\n";
    legend_y += 18;
  }
  CloseSvg(out, path);
}

void WriteBarChart(const std::string& path, const std::string& title,
                   const std::string& y_label, const std::vector<Bar>& bars) {
  if (bars.empty()) throw std::invalid_argument("bar chart needs bars");
  double y_max = 0.0;
  for (const auto& bar : bars) y_max = std::max(y_max, bar.value);
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.15;

  auto py = [&](double y) { return kBottom - y / y_max * (kBottom - kTop); };

  std::ofstream out = OpenSvg(path);
  DrawTitle(out, title);
  for (int t = 0; t <= kTicks; ++t) {
    const double fy = y_max * t / kTicks;
    out << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(py(fy))
        << "\" x2=\"" << Num(kRight) << "\" y2=\"" << Num(py(fy))
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << Num(kLeft - 8) << "\" y=\"" << Num(py(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << Num(fy) << "</text>\n";
  }
  out << "<rect x=\"" << Num(kLeft) << "\" y=\"" << Num(kTop) << "\" width=\""
      << Num(kRight - kLeft) << "\" height=\"" << Num(kBottom - kTop)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<text x=\"20\" y=\"" << Num((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 20 "
      << Num((kTop + kBottom) / 2) << ")\">" << Escape(y_label)
      << "</text>\n";

  const double slot = (kRight - kLeft) / static_cast<double>(bars.size());
  const double bar_width = slot * 0.6;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double top = py(bars[i].value);
    out << "<rect x=\"" << Num(cx - bar_width / 2) << "\" y=\"" << Num(top)
        << "\" width=\"" << Num(bar_width) << "\" height=\""
        << Num(kBottom - top) << "\" fill=\"" << bars[i].color << "\"/>\n";
    out << "<text x=\"" << Num(cx) << "\" y=\"" << Num(top - 6)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << Num(bars[i].value) << "</text>\n";
    out << "<text x=\"" << Num(cx) << "\" y=\"" << Num(kBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << Escape(bars[i].label) << "</text>\n";
  }
  CloseSvg(out, path);
}

}  // namespace gdpaudit::svg
