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

#ifndef GDPAUDIT_SVG_H_
#define GDPAUDIT_SVG_H_

#include <string>
#include <utility>
#include <vector>

namespace gdpaudit::svg {

// Minimal deterministic SVG plotting: fixed canvas, fixed-precision
// coordinates, no external renderer.

struct Series {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;
};

// Line plot over [0,1]x[0,1] style ranges with linear ticks and a legend.
void WriteLinePlot(const std::string& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const std::vector<Series>& series, double x_min,
                   double x_max, double y_min, double y_max);

struct Bar {
  std::string label;
  double value = 0.0;
  std::string color;
};

// Vertical bar chart with value labels; y starts at 0.
void WriteBarChart(const std::string& path, const std::string& title,
                   const std::string& y_label, const std::vector<Bar>& bars);

}  // namespace gdpaudit::svg

#endif  // GDPAUDIT_SVG_H_
