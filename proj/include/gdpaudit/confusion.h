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

#ifndef GDPAUDIT_CONFUSION_H_
#define GDPAUDIT_CONFUSION_H_

#include <cstdint>

namespace gdpaudit {

// Test-set confusion counts; label 1 (membership) is the positive class.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t positives() const { return tp + fn; }
  std::int64_t negatives() const { return fp + tn; }
  std::int64_t total() const { return tp + fp + tn + fn; }

  double Fpr() const {
    return negatives() > 0 ? static_cast<double>(fp) /
                                 static_cast<double>(negatives())
                           : 0.0;
  }
  double Fnr() const {
    return positives() > 0 ? static_cast<double>(fn) /
                                 static_cast<double>(positives())
                           : 0.0;
  }
  double Tpr() const { return positives() > 0 ? 1.0 - Fnr() : 0.0; }
  double Advantage() const { return Tpr() - Fpr(); }
};

}  // namespace gdpaudit

#endif  // GDPAUDIT_CONFUSION_H_
