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

#ifndef GDPAUDIT_LOGISTIC_H_
#define GDPAUDIT_LOGISTIC_H_

#include <vector>

namespace gdpaudit::logistic {

using Matrix = std::vector<std::vector<double>>;

// L2-regularized logistic regression on standardized features, fit by
// damped Newton iterations. The intercept is unpenalized; constant features
// get scale 0 and are ignored. Fully deterministic.
struct Model {
  std::vector<double> weights;  // per standardized feature
  double intercept = 0.0;
  std::vector<double> mean;
  std::vector<double> scale;  // 0 disables the feature
  double l2 = 1.0;

  double PredictProb(const std::vector<double>& x) const;
};

// Throws on an empty or single-class training set.
Model Train(const Matrix& x, const std::vector<int>& y, double l2 = 1.0);

}  // namespace gdpaudit::logistic

#endif  // GDPAUDIT_LOGISTIC_H_
