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

#ifndef GDPAUDIT_CSV_H_
#define GDPAUDIT_CSV_H_

#include <fstream>
#include <string>
#include <vector>

namespace gdpaudit::csv {

// Shortest decimal form that parses back to the same double; infinities
// render as "inf"/"-inf". Locale-independent.
std::string FormatDouble(double value);

// Comma-separated rows with '\n' endings, written in binary mode so output
// is byte-identical across platforms. Cells must not contain commas.
class CsvFile {
 public:
  explicit CsvFile(const std::string& path);
  void Row(const std::vector<std::string>& cells);
  void Close();

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace gdpaudit::csv

#endif  // GDPAUDIT_CSV_H_
