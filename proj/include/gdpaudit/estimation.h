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

#ifndef GDPAUDIT_ESTIMATION_H_
#define GDPAUDIT_ESTIMATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gdpaudit/confusion.h"

namespace gdpaudit::estimation {

// Confusion counts at every threshold the score set can distinguish: the
// midpoints of consecutive distinct scores plus -inf/+inf sentinels, ordered
// by descending threshold. A score counts as a positive prediction when
// score >= threshold.
struct SweepPoint {
  double threshold = 0.0;
  ConfusionCounts counts;
};

std::vector<SweepPoint> ThresholdSweep(const std::vector<double>& scores,
                                       const std::vector<int>& labels);

// Empirical FPR-FNR staircase over the same threshold grid. The first point
// is (+inf, 0, 1) and the last (-inf, 1, 0). Throws unless both classes are
// present.
struct CurvePoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
};

struct TradeoffCurve {
  std::vector<CurvePoint> points;
};

TradeoffCurve EmpiricalTradeoff(const std::vector<double>& scores,
                                const std::vector<int>& labels);

// Bayesian credible lower bound on the GDP parameter from test confusion
// counts: independent Jeffreys Beta posteriors on FPR and FNR, Monte Carlo
// estimate of the violation mass V(mu) = P[fnr < G_mu(fpr)], and the largest
// mu with V(mu) >= credibility found by bisection on [0, 20] to 1e-4.
struct MuEstimate {
  double mu_emp = 0.0;
  double credibility = 0.9;
  std::string posterior_spec;
  int mc_samples = 0;
  std::uint64_t mc_seed = 0;
};

MuEstimate PosteriorMuLower(const ConfusionCounts& counts, double credibility,
                            int mc_samples, std::uint64_t mc_seed);

// Single-threaded reference with identical output.
MuEstimate PosteriorMuLowerSerial(const ConfusionCounts& counts,
                                  double credibility, int mc_samples,
                                  std::uint64_t mc_seed);

// Chi-square baseline: pooled variance of the two sample groups, an upper
// confidence bound on sigma^2, and the induced lower bound sensitivity /
// sigma_ub. Requires two samples per group and nonzero pooled variance.
double NaiveWhiteboxMu(const std::vector<double>& in_samples,
                       const std::vector<double>& out_samples,
                       double confidence, double sensitivity);

// The mu whose Gaussian tradeoff curve passes exactly through (alpha, beta),
// clamped at 0. Both rates must lie strictly inside (0, 1).
double MuFromRates(double alpha, double beta);

// Plug-in inversion of the test rates; rates of exactly 0 or 1 get half-count
// smoothing before inversion.
double MuPointEstimate(const ConfusionCounts& counts);

}  // namespace gdpaudit::estimation

#endif  // GDPAUDIT_ESTIMATION_H_
