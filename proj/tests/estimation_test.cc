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
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gdpaudit/random.h"
#include "gdpaudit/special_functions.h"

namespace estimation = gdpaudit::estimation;
namespace math = gdpaudit::math;
namespace rng = gdpaudit::rng;
using gdpaudit::ConfusionCounts;

namespace {

ConfusionCounts Counts(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                       std::int64_t fn) {
  ConfusionCounts counts;
  counts.tp = tp;
  counts.fp = fp;
  counts.tn = tn;
  counts.fn = fn;
  return counts;
}

// Replays the posterior sampler: chunked streams over the posterior domain,
// one fpr draw then one fnr draw per sample, clamped into the open interval.
std::vector<double> ReferenceMargins(const ConfusionCounts& counts,
                                     int mc_samples, std::uint64_t mc_seed) {
  const double a_fp = static_cast<double>(counts.fp) + 0.5;
  const double a_tn = static_cast<double>(counts.tn) + 0.5;
  const double a_fn = static_cast<double>(counts.fn) + 0.5;
  const double a_tp = static_cast<double>(counts.tp) + 0.5;
  const int chunk_size = 4096;

  std::vector<double> margins;
  margins.reserve(static_cast<std::size_t>(mc_samples));
  const int chunks = (mc_samples + chunk_size - 1) / chunk_size;
  for (int c = 0; c < chunks; ++c) {
    rng::RandomStream stream(mc_seed, rng::kDomainPosterior,
                             static_cast<std::uint64_t>(c));
    const int end = std::min(mc_samples, (c + 1) * chunk_size);
    for (int i = c * chunk_size; i < end; ++i) {
      const double fpr = std::clamp(stream.Beta(a_fp, a_tn), 1e-15,
                                    0.9999999999999999);
      const double fnr = std::clamp(stream.Beta(a_fn, a_tp), 1e-15,
                                    0.9999999999999999);
      margins.push_back(-math::NormalQuantile(fpr) -
                        math::NormalQuantile(fnr));
    }
  }
  return margins;
}

// Closed form for the credible lower bound: the K-th largest margin with
// K = ceil(credibility * N), clamped to the search interval.
double ReferenceMuLower(std::vector<double> margins, double credibility) {
  const auto n = static_cast<double>(margins.size());
  const auto k = static_cast<std::size_t>(std::ceil(credibility * n));
  std::sort(margins.begin(), margins.end(), std::greater<>());
  return std::clamp(margins[k - 1], 0.0, 20.0);
}

}  // namespace

TEST_SUITE_BEGIN("estimation");

TEST_CASE("threshold sweep walks the score staircase") {
  const std::vector<double> scores = {0.1, 0.4, 0.4, 0.9};
  const std::vector<int> labels = {0, 1, 0, 1};
  const auto sweep = estimation::ThresholdSweep(scores, labels);
  REQUIRE(sweep.size() == 4);

  const double inf = std::numeric_limits<double>::infinity();
  CHECK(sweep[0].threshold == inf);
  CHECK(sweep[0].counts.tp == 0);
  CHECK(sweep[0].counts.fp == 0);
  CHECK(sweep[0].counts.tn == 2);
  CHECK(sweep[0].counts.fn == 2);

  CHECK(sweep[1].threshold == doctest::Approx(0.65));
  CHECK(sweep[1].counts.tp == 1);
  CHECK(sweep[1].counts.fp == 0);

  // Tied scores enter as one group.
  CHECK(sweep[2].threshold == doctest::Approx(0.25));
  CHECK(sweep[2].counts.tp == 2);
  CHECK(sweep[2].counts.fp == 1);

  CHECK(sweep[3].threshold == -inf);
  CHECK(sweep[3].counts.fp == 2);
  CHECK(sweep[3].counts.fn == 0);

  CHECK_THROWS_AS(estimation::ThresholdSweep({0.5}, {0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimation::ThresholdSweep({0.5, 0.5}, {0, 2}),
                  std::invalid_argument);
}

TEST_CASE("sweep counts grow monotonically as the threshold falls") {
  rng::RandomStream stream(15, 7, 9);
  std::vector<double> scores;
  std::vector<int> labels;
  for (int i = 0; i < 300; ++i) {
    scores.push_back(std::floor(stream.Uniform() * 16.0));
    labels.push_back(i % 2);
  }
  const auto sweep = estimation::ThresholdSweep(scores, labels);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].threshold < sweep[i - 1].threshold);
    CHECK(sweep[i].counts.tp >= sweep[i - 1].counts.tp);
    CHECK(sweep[i].counts.fp >= sweep[i - 1].counts.fp);
    CHECK(sweep[i].counts.total() == 300);
  }
}

TEST_CASE("empirical tradeoff spans both trivial classifiers") {
  const std::vector<double> scores = {0.2, 0.8, 0.5, 0.6, 0.3, 0.7};
  const std::vector<int> labels = {0, 1, 0, 1, 0, 1};
  const auto curve = estimation::EmpiricalTradeoff(scores, labels);
  REQUIRE(curve.points.size() >= 2);

  CHECK(curve.points.front().fpr == 0.0);
  CHECK(curve.points.front().fnr == 1.0);
  CHECK(curve.points.back().fpr == 1.0);
  CHECK(curve.points.back().fnr == 0.0);
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].fpr >= curve.points[i - 1].fpr);
    CHECK(curve.points[i].fnr <= curve.points[i - 1].fnr);
  }

  CHECK_THROWS_AS(estimation::EmpiricalTradeoff({0.5, 0.6}, {1, 1}),
                  std::invalid_argument);
}

TEST_CASE("balanced confusion counts give no positive bound") {
  const auto estimate =
      estimation::PosteriorMuLower(Counts(1000, 1000, 1000, 1000), 0.9,
                                   200000, 7);
  CHECK(estimate.mu_emp < 0.05);
  CHECK(estimate.credibility == 0.9);
  CHECK(estimate.mc_samples == 200000);
  CHECK(estimate.mc_seed == 7);
  CHECK(estimate.posterior_spec.find("Beta(1000.5,1000.5)") !=
        std::string::npos);
}

TEST_CASE("perfect separation gives a large bound") {
  const auto estimate =
      estimation::PosteriorMuLower(Counts(2000, 0, 2000, 0), 0.9, 200000, 7);
  CHECK(estimate.mu_emp > 3.0);
}

TEST_CASE("posterior bound matches the order-statistic closed form") {
  for (const auto& counts :
       {Counts(1343, 993, 1007, 657), Counts(700, 300, 800, 200),
        Counts(90, 60, 40, 10)}) {
    for (double credibility : {0.5, 0.9, 0.99}) {
      const int mc = 40000;
      const std::uint64_t seed = 321;
      const auto estimate =
          estimation::PosteriorMuLower(counts, credibility, mc, seed);
      const auto margins = ReferenceMargins(counts, mc, seed);
      const double expected = ReferenceMuLower(margins, credibility);
      CHECK(std::abs(estimate.mu_emp - expected) <= 1.01e-4);
    }
  }
}

TEST_CASE("parallel and serial posterior bounds agree exactly") {
  for (const auto& counts :
       {Counts(1343, 993, 1007, 657), Counts(150, 50, 120, 80)}) {
    const auto parallel =
        estimation::PosteriorMuLower(counts, 0.9, 100000, 11);
    const auto serial =
        estimation::PosteriorMuLowerSerial(counts, 0.9, 100000, 11);
    CHECK(parallel.mu_emp == serial.mu_emp);
  }
}

TEST_CASE("moving errors into hits never lowers the bound") {
  const std::uint64_t seed = 99;
  double prev = -1.0;
  for (std::int64_t tp : {1000, 1200, 1500, 1800, 1950}) {
    const auto estimate = estimation::PosteriorMuLower(
        Counts(tp, 300, 1700, 2000 - tp), 0.9, 100000, seed);
    CHECK(estimate.mu_emp >= prev - 1e-3);
    prev = estimate.mu_emp;
  }
}

TEST_CASE("higher credibility can only lower the bound") {
  const auto loose =
      estimation::PosteriorMuLower(Counts(60, 40, 60, 40), 0.5, 50000, 3);
  const auto tight =
      estimation::PosteriorMuLower(Counts(60, 40, 60, 40), 0.95, 50000, 3);
  CHECK(tight.mu_emp <= loose.mu_emp + 1e-12);
}

TEST_CASE("posterior bound rejects invalid inputs") {
  const auto counts = Counts(10, 10, 10, 10);
  CHECK_THROWS_AS(estimation::PosteriorMuLower(Counts(-1, 10, 10, 10), 0.9,
                                               100, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimation::PosteriorMuLower(Counts(0, 10, 10, 0), 0.9, 100,
                                               0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimation::PosteriorMuLower(counts, 0.0, 100, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimation::PosteriorMuLower(counts, 1.0, 100, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimation::PosteriorMuLower(counts, 0.9, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("naive whitebox bound matches the closed form") {
  const std::vector<double> in_samples = {0.0, 1.0, 2.0};
  const std::vector<double> out_samples = {10.0, 12.0, 14.0};
  // nu = 4, pooled variance 2.5, chi2 quantile at 0.1 from scipy.
  const double expected = 1.0 / std::sqrt(4.0 * 2.5 / 1.063623216779224);
  CHECK(estimation::NaiveWhiteboxMu(in_samples, out_samples, 0.9, 1.0) ==
        doctest::Approx(expected).epsilon(1e-10));
  CHECK(estimation::NaiveWhiteboxMu(in_samples, out_samples, 0.9, 2.0) ==
        doctest::Approx(2.0 * expected).epsilon(1e-10));
}

TEST_CASE("naive whitebox bound rejects degenerate inputs") {
  CHECK_THROWS_AS(estimation::NaiveWhiteboxMu({1.0}, {1.0, 2.0}, 0.9, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      estimation::NaiveWhiteboxMu({1.0, 2.0}, {1.0, 2.0}, 1.0, 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      estimation::NaiveWhiteboxMu({1.0, 2.0}, {1.0, 2.0}, 0.9, 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      estimation::NaiveWhiteboxMu({3.0, 3.0}, {5.0, 5.0}, 0.9, 1.0),
      std::domain_error);
}

TEST_CASE("naive whitebox bound covers a known unit sensitivity") {
  // Two unit-variance groups one mean apart; the 90% bound should cover
  // mu = 1 about nine times in ten and sit just below it on average.
  const int reps = 200;
  const int n = 1000;
  int covered = 0;
  double total = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    rng::RandomStream stream(606, rng::kDomainSimulation,
                             static_cast<std::uint64_t>(rep));
    std::vector<double> out_samples(n);
    std::vector<double> in_samples(n);
    for (auto& v : out_samples) v = stream.Normal();
    for (auto& v : in_samples) v = stream.Normal() + 1.0;
    const double mu =
        estimation::NaiveWhiteboxMu(in_samples, out_samples, 0.9, 1.0);
    covered += mu <= 1.0 ? 1 : 0;
    total += mu;
  }
  CHECK(covered >= 170);
  CHECK(total / reps > 0.95);
  CHECK(total / reps < 1.0);
}

TEST_CASE("mu from rates matches the normal quantile form") {
  CHECK(estimation::MuFromRates(0.25, 0.25) ==
        doctest::Approx(1.3489795003921635).epsilon(1e-12));
  CHECK(estimation::MuFromRates(0.5, 0.5) < 1e-12);
  CHECK(estimation::MuFromRates(0.5, 0.5) >= 0.0);
  CHECK(estimation::MuFromRates(0.9, 0.9) == 0.0);  // clamped at zero
  const double half = math::NormalCdf(-0.5);
  CHECK(estimation::MuFromRates(half, half) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(estimation::MuFromRates(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(estimation::MuFromRates(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("point estimate uses raw rates and smooths only degenerate ones") {
  CHECK(estimation::MuPointEstimate(Counts(1500, 500, 1500, 500)) ==
        doctest::Approx(1.3489795003921635).epsilon(1e-12));

  // fp = 0 smooths alpha to 0.5/(negatives + 1); beta stays raw.
  const auto smoothed = estimation::MuPointEstimate(Counts(600, 0, 1000, 400));
  const double alpha = 0.5 / 1001.0;
  const double expected =
      -math::NormalQuantile(alpha) - math::NormalQuantile(0.4);
  CHECK(smoothed == doctest::Approx(expected).epsilon(1e-12));

  const auto perfect = estimation::MuPointEstimate(Counts(2000, 0, 2000, 0));
  const double rate = 0.5 / 2001.0;
  CHECK(perfect ==
        doctest::Approx(-2.0 * math::NormalQuantile(rate)).epsilon(1e-12));

  CHECK_THROWS_AS(estimation::MuPointEstimate(Counts(5, 0, 0, 5)),
                  std::invalid_argument);
}

TEST_SUITE_END();
