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

#include "gdpaudit/logistic.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace gdpaudit::logistic {

namespace {

constexpr double kProbClamp = 1e-12;
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 30;
constexpr double kStepTolerance = 1e-8;

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// In-place Cholesky solve of the symmetric positive definite system a*x = b;
// a is row-major dim x dim.
std::vector<double> CholeskySolve(std::vector<double> a, std::vector<double> b,
                                  std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      a[i * dim + i] -= a[i * dim + k] * a[i * dim + k];
    }
    if (a[i * dim + i] <= 0.0) {
      throw std::runtime_error("normal equations not positive definite");
    }
    a[i * dim + i] = std::sqrt(a[i * dim + i]);
    for (std::size_t j = i + 1; j < dim; ++j) {
      for (std::size_t k = 0; k < i; ++k) {
        a[j * dim + i] -= a[j * dim + k] * a[i * dim + k];
      }
      a[j * dim + i] /= a[i * dim + i];
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= a[i * dim + k] * b[k];
    b[i] /= a[i * dim + i];
  }
  for (std::size_t i = dim; i-- > 0;) {
    for (std::size_t k = i + 1; k < dim; ++k) b[i] -= a[k * dim + i] * b[k];
    b[i] /= a[i * dim + i];
  }
  return b;
}

double PenalizedLoss(const Matrix& z, const std::vector<int>& y,
                     const std::vector<double>& theta, double l2) {
  const std::size_t d = theta.size() - 1;
  double loss = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double raw = theta[d];
    for (std::size_t j = 0; j < d; ++j) raw += theta[j] * z[i][j];
    const double p = std::clamp(Sigmoid(raw), kProbClamp, 1.0 - kProbClamp);
    loss -= y[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  for (std::size_t j = 0; j < d; ++j) loss += 0.5 * l2 * theta[j] * theta[j];
  return loss;
}

}  // namespace

double Model::PredictProb(const std::vector<double>& x) const {
  double raw = intercept;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (scale[j] > 0.0) {
      raw += weights[j] * (x[j] - mean[j]) / scale[j];
    }
  }
  return Sigmoid(raw);
}

Model Train(const Matrix& x, const std::vector<int>& y, double l2) {
  if (x.empty()) throw std::invalid_argument("empty training set");
  if (x.size() != y.size()) {
    throw std::invalid_argument("feature/label size mismatch");
  }
  if (!(l2 > 0.0)) throw std::invalid_argument("l2 must be positive");
  const std::size_t n = x.size();
  const std::size_t d = x.front().size();
  for (const auto& row : x) {
    if (row.size() != d) throw std::invalid_argument("ragged feature rows");
  }
  int seen[2] = {0, 0};
  for (int label : y) {
    if (label != 0 && label != 1) {
      throw std::invalid_argument("labels must be 0 or 1");
    }
    ++seen[label];
  }
  if (seen[0] == 0 || seen[1] == 0) {
    throw std::invalid_argument("training set must contain both classes");
  }

  Model model;
  model.l2 = l2;
  model.mean.assign(d, 0.0);
  model.scale.assign(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x[i][j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = x[i][j] - mean;
      var += c * c;
    }
    var /= static_cast<double>(n);
    model.mean[j] = mean;
    model.scale[j] = var > 0.0 ? std::sqrt(var) : 0.0;
  }

  Matrix z(n, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (model.scale[j] > 0.0) {
        z[i][j] = (x[i][j] - model.mean[j]) / model.scale[j];
      }
    }
  }

  const std::size_t dim = d + 1;  // weights then intercept
  std::vector<double> theta(dim, 0.0);
  double loss = PenalizedLoss(z, y, theta, l2);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    std::vector<double> gradient(dim, 0.0);
    std::vector<double> hessian(dim * dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double raw = theta[d];
      for (std::size_t j = 0; j < d; ++j) raw += theta[j] * z[i][j];
      const double p = std::clamp(Sigmoid(raw), kProbClamp, 1.0 - kProbClamp);
      const double r = p - static_cast<double>(y[i]);
      const double w = p * (1.0 - p);
      for (std::size_t j = 0; j < d; ++j) {
        gradient[j] += r * z[i][j];
        for (std::size_t k = 0; k <= j; ++k) {
          hessian[j * dim + k] += w * z[i][j] * z[i][k];
        }
        hessian[d * dim + j] += w * z[i][j];
      }
      gradient[d] += r;
      hessian[d * dim + d] += w;
    }
    for (std::size_t j = 0; j < d; ++j) {
      gradient[j] += l2 * theta[j];
      hessian[j * dim + j] += l2;
    }
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = j + 1; k < dim; ++k) {
        hessian[j * dim + k] = hessian[k * dim + j];
      }
    }

    std::vector<double> negated = gradient;
    for (double& v : negated) v = -v;
    const std::vector<double> step = CholeskySolve(hessian, negated, dim);

    double scale = 1.0;
    std::vector<double> candidate(dim);
    double candidate_loss = 0.0;
    bool accepted = false;
    for (int half = 0; half < kMaxHalvings; ++half) {
      for (std::size_t j = 0; j < dim; ++j) {
        candidate[j] = theta[j] + scale * step[j];
      }
      candidate_loss = PenalizedLoss(z, y, candidate, l2);
      if (candidate_loss <= loss) {
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;

    double max_step = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      max_step = std::max(max_step, std::abs(candidate[j] - theta[j]));
    }
    theta = candidate;
    loss = candidate_loss;
    if (max_step < kStepTolerance) break;
  }

  model.weights.assign(theta.begin(), theta.begin() + static_cast<long>(d));
  model.intercept = theta[d];
  return model;
}

}  // namespace gdpaudit::logistic
