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

#include "gdpaudit/gbdt.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gdpaudit::gbdt {

namespace {

constexpr double kProbClamp = 1e-15;

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double LogLoss(const std::vector<double>& raw, const std::vector<int>& y) {
  double loss = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double p =
        std::clamp(Sigmoid(raw[i]), kProbClamp, 1.0 - kProbClamp);
    loss -= y[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return loss / static_cast<double>(raw.size());
}

void CheckInputs(const Matrix& train_x, const std::vector<int>& train_y,
                 const Matrix& val_x, const std::vector<int>& val_y) {
  if (train_x.empty()) throw std::invalid_argument("empty training set");
  if (train_x.size() != train_y.size() || val_x.size() != val_y.size()) {
    throw std::invalid_argument("feature/label size mismatch");
  }
  const std::size_t width = train_x.front().size();
  for (const auto& row : train_x) {
    if (row.size() != width) throw std::invalid_argument("ragged feature rows");
  }
  for (const auto& row : val_x) {
    if (row.size() != width) throw std::invalid_argument("ragged feature rows");
  }
  int seen[2] = {0, 0};
  for (int y : train_y) {
    if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0 or 1");
    ++seen[y];
  }
  if (seen[0] == 0 || seen[1] == 0) {
    throw std::invalid_argument("training set must contain both classes");
  }
  for (int y : val_y) {
    if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0 or 1");
  }
}

struct SplitCandidate {
  double gain = 0.0;
  double threshold = 0.0;
};

}  // namespace

double Tree::Predict(const std::vector<double>& x) const {
  int node = 0;
  while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& cur = nodes[static_cast<std::size_t>(node)];
    node = x[static_cast<std::size_t>(cur.feature)] < cur.threshold ? cur.left
                                                                    : cur.right;
  }
  return nodes[static_cast<std::size_t>(node)].value;
}

double Model::PredictRaw(const std::vector<double>& x) const {
  double raw = base_score;
  for (const auto& tree : trees) raw += tree.Predict(x);
  return raw;
}

double Model::PredictProb(const std::vector<double>& x) const {
  return Sigmoid(PredictRaw(x));
}

Model Train(const Matrix& train_x, const std::vector<int>& train_y,
            const Matrix& val_x, const std::vector<int>& val_y,
            const TrainOptions& options) {
  CheckInputs(train_x, train_y, val_x, val_y);

  const auto n = train_x.size();
  const auto d = train_x.front().size();
  const double lambda = options.l2;

  // Column-major copy plus one ascending index order per feature; ties break
  // by sample index so the scan order is unique.
  std::vector<std::vector<double>> cols(d, std::vector<double>(n));
  std::vector<std::vector<int>> sorted_idx(d, std::vector<int>(n));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = train_x[i][j];
    std::iota(sorted_idx[j].begin(), sorted_idx[j].end(), 0);
    const auto& col = cols[j];
    std::sort(sorted_idx[j].begin(), sorted_idx[j].end(),
              [&col](int a, int b) {
                const double va = col[static_cast<std::size_t>(a)];
                const double vb = col[static_cast<std::size_t>(b)];
                return va < vb || (va == vb && a < b);
              });
  }

  Model model;
  model.options = options;
  double mean_y = 0.0;
  for (int y : train_y) mean_y += y;
  mean_y = std::clamp(mean_y / static_cast<double>(n), kProbClamp,
                      1.0 - kProbClamp);
  model.base_score = std::log(mean_y / (1.0 - mean_y));

  std::vector<double> raw(n, model.base_score);
  std::vector<double> raw_val(val_x.size(), model.base_score);
  std::vector<double> grad(n);
  std::vector<double> hess(n);
  std::vector<int> node_of(n);

  double best_loss = std::numeric_limits<double>::infinity();
  int best_round = -1;

  for (int round = 0; round < options.max_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = Sigmoid(raw[i]);
      grad[i] = p - static_cast<double>(train_y[i]);
      hess[i] = p * (1.0 - p);
    }

    Tree tree;
    tree.nodes.push_back(TreeNode{});
    std::fill(node_of.begin(), node_of.end(), 0);
    std::vector<int> open = {0};

    for (int depth = 0; depth <= options.max_depth && !open.empty(); ++depth) {
      const auto slots = open.size();
      std::vector<int> node_slot(tree.nodes.size(), -1);
      for (std::size_t s = 0; s < slots; ++s) {
        node_slot[static_cast<std::size_t>(open[s])] = static_cast<int>(s);
      }
      std::vector<double> total_g(slots, 0.0);
      std::vector<double> total_h(slots, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const int slot = node_slot[static_cast<std::size_t>(node_of[i])];
        if (slot < 0) continue;
        total_g[static_cast<std::size_t>(slot)] += grad[i];
        total_h[static_cast<std::size_t>(slot)] += hess[i];
      }

      if (depth == options.max_depth) {
        for (std::size_t s = 0; s < slots; ++s) {
          TreeNode& leaf = tree.nodes[static_cast<std::size_t>(open[s])];
          leaf.feature = -1;
          leaf.value =
              options.learning_rate * (-total_g[s] / (total_h[s] + lambda));
        }
        break;
      }

      // One ascending scan per feature serves every open node at this level;
      // per-(node, feature) bests are reduced serially afterwards, so the
      // chosen tree does not depend on the thread count.
      std::vector<SplitCandidate> best(slots * d);
#pragma omp parallel for schedule(static)
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> left_g(slots, 0.0);
        std::vector<double> left_h(slots, 0.0);
        std::vector<double> prev(slots, 0.0);
        std::vector<char> has_prev(slots, 0);
        const auto& col = cols[j];
        for (std::size_t r = 0; r < n; ++r) {
          const auto i = static_cast<std::size_t>(sorted_idx[j][r]);
          const int slot = node_slot[static_cast<std::size_t>(node_of[i])];
          if (slot < 0) continue;
          const auto s = static_cast<std::size_t>(slot);
          const double v = col[i];
          if (has_prev[s] != 0 && v > prev[s]) {
            const double hl = left_h[s];
            const double hr = total_h[s] - hl;
            if (hl >= options.min_child_hessian &&
                hr >= options.min_child_hessian) {
              const double gl = left_g[s];
              const double gr = total_g[s] - gl;
              const double gain =
                  0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                         total_g[s] * total_g[s] / (total_h[s] + lambda));
              SplitCandidate& cand = best[s * d + j];
              if (gain > cand.gain) {
                cand.gain = gain;
                cand.threshold = prev[s] + (v - prev[s]) * 0.5;
              }
            }
          }
          left_g[s] += grad[i];
          left_h[s] += hess[i];
          prev[s] = v;
          has_prev[s] = 1;
        }
      }

      std::vector<int> next_open;
      std::vector<int> split_feature(slots, -1);
      std::vector<double> split_threshold(slots, 0.0);
      for (std::size_t s = 0; s < slots; ++s) {
        double best_gain = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const SplitCandidate& cand = best[s * d + j];
          if (cand.gain > best_gain) {
            best_gain = cand.gain;
            split_feature[s] = static_cast<int>(j);
            split_threshold[s] = cand.threshold;
          }
        }
        TreeNode& node = tree.nodes[static_cast<std::size_t>(open[s])];
        if (split_feature[s] < 0) {
          node.feature = -1;
          node.value =
              options.learning_rate * (-total_g[s] / (total_h[s] + lambda));
          continue;
        }
        node.feature = split_feature[s];
        node.threshold = split_threshold[s];
        node.left = static_cast<int>(tree.nodes.size());
        node.right = node.left + 1;
        next_open.push_back(node.left);
        next_open.push_back(node.right);
        tree.nodes.push_back(TreeNode{});
        tree.nodes.push_back(TreeNode{});
      }

      for (std::size_t i = 0; i < n; ++i) {
        const int slot = node_slot[static_cast<std::size_t>(node_of[i])];
        if (slot < 0 || split_feature[static_cast<std::size_t>(slot)] < 0) {
          continue;
        }
        const auto s = static_cast<std::size_t>(slot);
        const TreeNode& node = tree.nodes[static_cast<std::size_t>(open[s])];
        node_of[i] = cols[static_cast<std::size_t>(node.feature)][i] <
                             node.threshold
                         ? node.left
                         : node.right;
      }
      open = std::move(next_open);
    }

    for (std::size_t i = 0; i < n; ++i) {
      raw[i] += tree.nodes[static_cast<std::size_t>(node_of[i])].value;
    }
    for (std::size_t i = 0; i < val_x.size(); ++i) {
      raw_val[i] += tree.Predict(val_x[i]);
    }
    model.trees.push_back(std::move(tree));

    if (!val_x.empty()) {
      const double loss = LogLoss(raw_val, val_y);
      model.val_loss_trace.push_back(loss);
      if (loss < best_loss) {
        best_loss = loss;
        best_round = round;
      } else if (round - best_round >= options.early_stop_rounds) {
        break;
      }
    }
  }

  if (!val_x.empty() && best_round >= 0) {
    model.trees.resize(static_cast<std::size_t>(best_round + 1));
  }
  model.rounds_used = static_cast<int>(model.trees.size());
  return model;
}

}  // namespace gdpaudit::gbdt
