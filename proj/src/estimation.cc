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

#include "gdpaudit/estimation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "gdpaudit/random.h"
#include "gdpaudit/special_functions.h"

namespace gdpaudit::estimation {

namespace {

constexpr double kMuCap = 20.0;
constexpr double kMuTolerance = 1e-4;
constexpr int kChunkSize = 4096;
// Beta draws can round to the open-interval edges; one quantile evaluation
// away from 0/1 keeps the margins finite without visibly moving them.
constexpr double kRateFloor = 1e-15;
constexpr double kRateCeil = 0.9999999999999999;

void CheckCounts(const ConfusionCounts& counts) {
  if (counts.tp < 0 || counts.fp < 0 || counts.tn < 0 || counts.fn < 0) {
    throw std::invalid_argument("confusion counts must be nonnegative");
  }
  if (counts.positives() == 0 || counts.negatives() == 0) {
    throw std::invalid_argument(
        "confusion counts need both classes in the test set");
  }
}

// The violation event fnr < G_mu(fpr) is equivalent to mu < margin with
// margin = NormalQuantile(1 - fpr) - NormalQuantile(fnr), so each posterior
// sample reduces to one precomputed margin.
std::vector<double> DrawMargins(const ConfusionCounts& counts, int mc_samples,
                                std::uint64_t mc_seed, bool parallel) {
  const double a_fp = static_cast<double>(counts.fp) + 0.5;
  const double a_tn = static_cast<double>(counts.tn) + 0.5;
  const double a_fn = static_cast<double>(counts.fn) + 0.5;
  const double a_tp = static_cast<double>(counts.tp) + 0.5;

  std::vector<double> margins(static_cast<std::size_t>(mc_samples));
  const int chunks = (mc_samples + kChunkSize - 1) / kChunkSize;
#pragma omp parallel for schedule(static) if (parallel)
  for (int c = 0; c < chunks; ++c) {
    rng::RandomStream stream(mc_seed, rng::kDomainPosterior,
                             static_cast<std::uint64_t>(c));
    const int begin = c * kChunkSize;
    const int end = std::min(mc_samples, begin + kChunkSize);
    for (int i = begin; i < end; ++i) {
      const double fpr =
          std::clamp(stream.Beta(a_fp, a_tn), kRateFloor, kRateCeil);
      const double fnr =
          std::clamp(stream.Beta(a_fn, a_tp), kRateFloor, kRateCeil);
      margins[static_cast<std::size_t>(i)] =
          -math::NormalQuantile(fpr) - math::NormalQuantile(fnr);
    }
  }
  return margins;
}

double ViolationMass(const std::vector<double>& margins, double mu) {
  std::size_t count = 0;
  for (double margin : margins) {
    if (margin > mu) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(margins.size());
}

MuEstimate PosteriorMuLowerImpl(const ConfusionCounts& counts,
                                double credibility, int mc_samples,
                                std::uint64_t mc_seed, bool parallel) {
  CheckCounts(counts);
  if (!(credibility > 0.0 && credibility < 1.0)) {
    throw std::invalid_argument("credibility must lie in (0, 1)");
  }
  if (mc_samples <= 0) {
    throw std::invalid_argument("mc_samples must be positive");
  }

  MuEstimate estimate;
  estimate.credibility = credibility;
  estimate.mc_samples = mc_samples;
  estimate.mc_seed = mc_seed;
  char spec[160];
  std::snprintf(spec, sizeof(spec),
                "independent fpr~Beta(%.1f,%.1f), fnr~Beta(%.1f,%.1f)",
                static_cast<double>(counts.fp) + 0.5,
                static_cast<double>(counts.tn) + 0.5,
                static_cast<double>(counts.fn) + 0.5,
                static_cast<double>(counts.tp) + 0.5);
  estimate.posterior_spec = spec;

  const auto margins = DrawMargins(counts, mc_samples, mc_seed, parallel);

  double prev = 1.0;
  for (int g = 0; g <= 40; ++g) {
    const double v = ViolationMass(margins, kMuCap * g / 40.0);
    if (v > prev) throw std::logic_error("violation mass must be monotone");
    prev = v;
  }

  if (ViolationMass(margins, 0.0) < credibility) {
    estimate.mu_emp = 0.0;
    return estimate;
  }
  if (ViolationMass(margins, kMuCap) >= credibility) {
    estimate.mu_emp = kMuCap;
    return estimate;
  }
  double lo = 0.0;
  double hi = kMuCap;
  while (hi - lo > kMuTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (ViolationMass(margins, mid) >= credibility) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  estimate.mu_emp = lo;
  return estimate;
}

}  // namespace

std::vector<SweepPoint> ThresholdSweep(const std::vector<double>& scores,
                                       const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("score/label size mismatch");
  }
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  for (int label : labels) {
    if (label != 0 && label != 1) {
      throw std::invalid_argument("labels must be 0 or 1");
    }
    (label == 1 ? positives : negatives) += 1;
  }

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&scores](std::size_t a, std::size_t b) {
              return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
            });

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<SweepPoint> sweep;
  ConfusionCounts counts;
  counts.tn = negatives;
  counts.fn = positives;
  sweep.push_back({inf, counts});

  std::size_t i = 0;
  while (i < order.size()) {
    const double value = scores[order[i]];
    while (i < order.size() && scores[order[i]] == value) {
      if (labels[order[i]] == 1) {
        ++counts.tp;
        --counts.fn;
      } else {
        ++counts.fp;
        --counts.tn;
      }
      ++i;
    }
    const double threshold =
        i < order.size() ? value + (scores[order[i]] - value) * 0.5 : -inf;
    sweep.push_back({threshold, counts});
  }
  if (sweep.size() == 1) sweep.push_back({-inf, counts});
  return sweep;
}

TradeoffCurve EmpiricalTradeoff(const std::vector<double>& scores,
                                const std::vector<int>& labels) {
  const auto sweep = ThresholdSweep(scores, labels);
  const ConfusionCounts& last = sweep.back().counts;
  if (last.positives() == 0 || last.negatives() == 0) {
    throw std::invalid_argument("tradeoff needs both classes present");
  }
  TradeoffCurve curve;
  curve.points.reserve(sweep.size());
  for (const auto& point : sweep) {
    curve.points.push_back(
        {point.threshold, point.counts.Fpr(), point.counts.Fnr()});
  }
  return curve;
}

MuEstimate PosteriorMuLower(const ConfusionCounts& counts, double credibility,
                            int mc_samples, std::uint64_t mc_seed) {
  return PosteriorMuLowerImpl(counts, credibility, mc_samples, mc_seed, true);
}

MuEstimate PosteriorMuLowerSerial(const ConfusionCounts& counts,
                                  double credibility, int mc_samples,
                                  std::uint64_t mc_seed) {
  return PosteriorMuLowerImpl(counts, credibility, mc_samples, mc_seed, false);
}

double NaiveWhiteboxMu(const std::vector<double>& in_samples,
                       const std::vector<double>& out_samples,
                       double confidence, double sensitivity) {
  if (in_samples.size() < 2 || out_samples.size() < 2) {
    throw std::invalid_argument("each group needs at least two samples");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  if (!(sensitivity > 0.0)) {
    throw std::invalid_argument("sensitivity must be positive");
  }

  double sum_squares = 0.0;
  for (const auto* group : {&in_samples, &out_samples}) {
    double mean = 0.0;
    for (double v : *group) mean += v;
    mean /= static_cast<double>(group->size());
    for (double v : *group) sum_squares += (v - mean) * (v - mean);
  }
  const auto nu =
      static_cast<double>(in_samples.size() + out_samples.size() - 2);
  const double pooled = sum_squares / nu;
  if (!(pooled > 0.0)) {
    throw std::domain_error("pooled variance is zero (constant samples)");
  }
  const double quantile = math::ChiSquareQuantile(nu, 1.0 - confidence);
  const double sigma_sq_ub = nu * pooled / quantile;
  return sensitivity / std::sqrt(sigma_sq_ub);
}

double MuFromRates(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("rates must lie strictly inside (0, 1)");
  }
  const double mu = -math::NormalQuantile(alpha) - math::NormalQuantile(beta);
  return std::max(0.0, mu);
}

double MuPointEstimate(const ConfusionCounts& counts) {
  CheckCounts(counts);
  const auto negatives = static_cast<double>(counts.negatives());
  const auto positives = static_cast<double>(counts.positives());
  double alpha = static_cast<double>(counts.fp) / negatives;
  double beta = static_cast<double>(counts.fn) / positives;
  if (alpha == 0.0 || alpha == 1.0) {
    alpha = (static_cast<double>(counts.fp) + 0.5) / (negatives + 1.0);
  }
  if (beta == 0.0 || beta == 1.0) {
    beta = (static_cast<double>(counts.fn) + 0.5) / (positives + 1.0);
  }
  return MuFromRates(alpha, beta);
}

}  // namespace gdpaudit::estimation
