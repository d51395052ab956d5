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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "gdpaudit/csv.h"
#include "gdpaudit/svg.h"

namespace csv = gdpaudit::csv;
namespace svg = gdpaudit::svg;
namespace fs = std::filesystem;

namespace {

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string TempPath(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE_BEGIN("artifacts");

TEST_CASE("doubles format with shortest round-trip digits") {
  CHECK(csv::FormatDouble(1.0) == "1");
  CHECK(csv::FormatDouble(0.1) == "0.1");
  CHECK(csv::FormatDouble(-2.5) == "-2.5");
  CHECK(csv::FormatDouble(0.0) == "0");

  for (double value : {1.0 / 3.0, 0.401153564453125, 1e-300, 12345.6789,
                       -9.87654321e18}) {
    const std::string text = csv::FormatDouble(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
}

TEST_CASE("csv files write comma-joined rows") {
  const auto path = TempPath("gdpaudit_artifacts_test.csv");
  {
    csv::CsvFile file(path);
    file.Row({"a", "b", "c"});
    file.Row({"1", "-2.5", ""});
    file.Row({"single"});
    file.Close();
  }
  CHECK(Slurp(path) == "a,b,c\n1,-2.5,\nsingle\n");
  std::remove(path.c_str());

  CHECK_THROWS_AS(csv::CsvFile("/nonexistent_dir/file.csv"),
                  std::runtime_error);
}

TEST_CASE("line plots emit self-contained svg") {
  const auto path = TempPath("gdpaudit_artifacts_test.svg");
  svg::Series series;
  series.label = "curve <1 & 2>";
  series.color = "#1f77b4";
  series.points = {{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
  svg::Series dashed = series;
  dashed.label = "reference";
  dashed.dashed = true;

  svg::WriteLinePlot(path, "tradeoff", "fpr", "fnr", {series, dashed}, 0.0,
                     1.0, 0.0, 1.0);
  const std::string content = Slurp(path);
  CHECK(content.rfind("<svg", 0) == 0);
  CHECK(content.find("</svg>") != std::string::npos);
  CHECK(content.find("polyline") != std::string::npos);
  CHECK(content.find("stroke-dasharray") != std::string::npos);
  // Labels pass through the escaper.
  CHECK(content.find("curve &lt;1 &amp; 2&gt;") != std::string::npos);
  CHECK(content.find("curve <1") == std::string::npos);
  std::remove(path.c_str());

  CHECK_THROWS_AS(svg::WriteLinePlot(path, "t", "x", "y", {series}, 0.0, 0.0,
                                     0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("bar charts emit one rect per bar") {
  const auto path = TempPath("gdpaudit_artifacts_bar_test.svg");
  svg::WriteBarChart(path, "variants", "mu_emp",
                     {{"default", 0.4, "#1f77b4"}, {"black", 0.3, "#9ecae1"}});
  const std::string content = Slurp(path);
  CHECK(content.rfind("<svg", 0) == 0);
  CHECK(content.find("default") != std::string::npos);
  CHECK(content.find("black") != std::string::npos);
  std::remove(path.c_str());

  CHECK_THROWS_AS(svg::WriteBarChart(path, "t", "y", {}),
                  std::invalid_argument);
}

TEST_SUITE_END();
