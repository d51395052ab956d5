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

#ifndef GDPAUDIT_GBDT_H_
#define GDPAUDIT_GBDT_H_

#include <vector>

namespace gdpaudit::gbdt {

using Matrix = std::vector<std::vector<double>>;

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // learning-rate-scaled leaf weight
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  // Sum contribution of this tree: walk left when x[feature] < threshold.
  double Predict(const std::vector<double>& x) const;
};

struct TrainOptions {
  int max_rounds = 200;
  int max_depth = 3;
  double learning_rate = 0.1;
  int early_stop_rounds = 20;
  double l2 = 1.0;
  double min_child_hessian = 1.0;
};

// Binary-logistic boosted trees fit with exact greedy splits. Training is
// fully deterministic: features are scanned in index order, candidate
// thresholds in ascending order, and ties keep the first candidate, so the
// parallel split search reduces to the same tree on any thread count.
struct Model {
  double base_score = 0.0;  // raw log-odds initialization
  std::vector<Tree> trees;
  TrainOptions options;
  int rounds_used = 0;
  std::vector<double> val_loss_trace;

  double PredictRaw(const std::vector<double>& x) const;
  double PredictProb(const std::vector<double>& x) const;  // in [0, 1]
};

// Trains with early stopping on validation log loss: stops after
// early_stop_rounds rounds without improvement and keeps the best prefix.
// An empty validation set disables early stopping. Throws on an empty or
// single-class training set.
Model Train(const Matrix& train_x, const std::vector<int>& train_y,
            const Matrix& val_x, const std::vector<int>& val_y,
            const TrainOptions& options = {});

}  // namespace gdpaudit::gbdt

#endif  // GDPAUDIT_GBDT_H_
