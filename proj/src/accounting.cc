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

#include "gdpaudit/accounting.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gdpaudit/special_functions.h"

namespace gdpaudit::accounting {
namespace {

constexpr double kRenyiOrderMax = 500.0;
constexpr double kRenyiOrderMin = 1.0 + 1e-9;

// log of exp((a-1)(a*rho - eps)) * (1-1/a)^a / (a-1) at Renyi order a.
// Strictly convex in a (its second derivative is 2*rho + 1/(a*(a-1)) > 0),
// so a single golden-section descent finds the global minimum.
double LogConversionObjective(double a, double rho, double epsilon) {
  return (a - 1.0) * (a * rho - epsilon) + a * std::log1p(-1.0 / a) -
         std::log(a - 1.0);
}

double MinimizeLogObjective(double rho, double epsilon) {
  // Coarse grid seed. Orders near 1 matter for large rho, large orders for
  // small rho; a log-spaced grid covers both ends.
  constexpr int kGridPoints = 512;
  double best_a = kRenyiOrderMin;
  double best_value = LogConversionObjective(best_a, rho, epsilon);
  for (int i = 1; i <= kGridPoints; ++i) {
    const double frac = static_cast<double>(i) / kGridPoints;
    const double a =
        1.0 + std::exp(std::log(1e-6) +
                       frac * (std::log(kRenyiOrderMax - 1.0) - std::log(1e-6)));
    const double value = LogConversionObjective(a, rho, epsilon);
    if (value < best_value) {
      best_value = value;
      best_a = a;
    }
  }

  // Golden-section search on the bracketing grid cells.
  const double step = (std::log(kRenyiOrderMax - 1.0) - std::log(1e-6)) /
                      kGridPoints;
  double lo = std::max(kRenyiOrderMin, 1.0 + (best_a - 1.0) * std::exp(-step));
  double hi = std::min(kRenyiOrderMax, 1.0 + (best_a - 1.0) * std::exp(step));
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = LogConversionObjective(x1, rho, epsilon);
  double f2 = LogConversionObjective(x2, rho, epsilon);
  while (hi - lo > 1e-12 * (1.0 + hi)) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = LogConversionObjective(x1, rho, epsilon);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = LogConversionObjective(x2, rho, epsilon);
    }
  }
  return std::min({best_value, f1, f2});
}

}  // namespace

double ZcdpDelta(double rho, double epsilon) {
  if (rho < 0.0 || epsilon < 0.0) {
    throw std::invalid_argument("ZcdpDelta: need rho >= 0 and epsilon >= 0");
  }
  if (rho == 0.0) return 0.0;
  const double log_delta = MinimizeLogObjective(rho, epsilon);
  return std::min(1.0, std::exp(log_delta));
}

double RhoFromDp(double epsilon, double delta) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("RhoFromDp: need epsilon > 0");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("RhoFromDp: need delta in (0, 1]");
  }
  if (delta >= 1.0) return 0.0;

  double lo = 0.0;
  double hi = epsilon * epsilon;
  // The pure-DP heuristic bracket can undershoot for large delta; grow it
  // until the conversion exceeds the target.
  while (ZcdpDelta(hi, epsilon) <= delta) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) break;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (ZcdpDelta(mid, epsilon) <= delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double RhoToMu(double rho) {
  if (rho < 0.0) throw std::invalid_argument("RhoToMu: need rho >= 0");
  return std::sqrt(2.0 * rho);
}

double ZcdpEpsilonSimple(double rho, double delta) {
  if (rho < 0.0) {
    throw std::invalid_argument("ZcdpEpsilonSimple: need rho >= 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("ZcdpEpsilonSimple: need delta in (0, 1)");
  }
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

double GdpDelta(double mu, double epsilon) {
  if (mu < 0.0 || epsilon < 0.0) {
    throw std::invalid_argument("GdpDelta: need mu >= 0 and epsilon >= 0");
  }
  if (mu == 0.0) return 0.0;
  const double a = -epsilon / mu + 0.5 * mu;
  const double b = -epsilon / mu - 0.5 * mu;
  return math::NormalCdf(a) - std::exp(epsilon) * math::NormalCdf(b);
}

double MuFromDp(double epsilon, double delta) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("MuFromDp: need epsilon >= 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("MuFromDp: need delta in (0, 1)");
  }
  double lo = 0.0;
  double hi = 100.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (GdpDelta(mid, epsilon) < delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ImpliedMu(double epsilon, double delta) {
  return RhoToMu(RhoFromDp(epsilon, delta));
}

double GaussTradeoff(double mu, double alpha) {
  if (mu < 0.0) throw std::invalid_argument("GaussTradeoff: need mu >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("GaussTradeoff: need alpha in [0, 1]");
  }
  if (alpha == 0.0) return 1.0;
  if (alpha == 1.0) return 0.0;
  return math::NormalCdf(math::NormalQuantile(1.0 - alpha) - mu);
}

double DpTradeoff(double epsilon, double delta, double alpha) {
  if (epsilon < 0.0 || !(delta >= 0.0 && delta <= 1.0) ||
      !(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("DpTradeoff: arguments out of range");
  }
  const double line1 = 1.0 - delta - std::exp(epsilon) * alpha;
  const double line2 = std::exp(-epsilon) * (1.0 - delta - alpha);
  return std::max({0.0, line1, line2});
}

PrivacyBudget PrivacyBudget::FromDp(double epsilon, double delta) {
  PrivacyBudget budget;
  budget.epsilon = epsilon;
  budget.delta = delta;
  budget.rho = RhoFromDp(epsilon, delta);
  budget.mu_implied = RhoToMu(budget.rho);
  budget.mu_direct =
      delta < 1.0 ? MuFromDp(epsilon, delta)
                  : std::numeric_limits<double>::infinity();
  return budget;
}

}  // namespace gdpaudit::accounting
