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

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "gdpaudit/attack.h"
#include "gdpaudit/estimation.h"
#include "gdpaudit/game.h"
#include "gdpaudit/serialize.h"

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point begin, Clock::time_point end) {
  return std::chrono::duration<double>(end - begin).count();
}

void Report(const char* kernel, double serial_s, double parallel_s,
            bool match) {
  std::printf("%-22s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
              kernel, serial_s, parallel_s,
              parallel_s > 0.0 ? serial_s / parallel_s : 0.0,
              match ? "outputs match" : "OUTPUT MISMATCH");
}

bool SameTrials(const std::vector<gdpaudit::game::TrialRecord>& a,
                const std::vector<gdpaudit::game::TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (gdpaudit::serialize::TrialToJsonLine(a[i], 0) !=
        gdpaudit::serialize::TrialToJsonLine(b[i], 0)) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel comparison"};
  int trials = 2000;
  int mc_samples = 2000000;
  int threads = 0;
  app.add_option("--trials", trials, "game size");
  app.add_option("--mc", mc_samples, "posterior Monte Carlo samples");
  app.add_option("--threads", threads, "worker thread count");
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);
  std::printf("max threads: %d\n", omp_get_max_threads());

  gdpaudit::game::GameConfig config;
  config.n_trials = trials;
  config.split_train = (trials / 10) * 4;
  config.split_val = (trials / 10) * 2;
  config.split_test = trials - config.split_train - config.split_val;
  config.master_seed = 7;

  auto t0 = Clock::now();
  auto serial_trials = gdpaudit::game::RunGameSerial(config);
  auto t1 = Clock::now();
  auto parallel_trials = gdpaudit::game::RunGame(config);
  auto t2 = Clock::now();
  Report("game trials", Seconds(t0, t1), Seconds(t1, t2),
         SameTrials(serial_trials, parallel_trials));

  const auto workload = gdpaudit::mechanism::BuildWorkload(
      config.domain, config.workload_order);
  t0 = Clock::now();
  gdpaudit::attack::FillFeaturesSerial(serial_trials, config.threat_model,
                                       config.domain, workload);
  t1 = Clock::now();
  gdpaudit::attack::FillFeatures(parallel_trials, config.threat_model,
                                 config.domain, workload);
  t2 = Clock::now();
  bool features_match = true;
  for (std::size_t i = 0; i < serial_trials.size(); ++i) {
    if (serial_trials[i].features != parallel_trials[i].features) {
      features_match = false;
      break;
    }
  }
  Report("feature extraction", Seconds(t0, t1), Seconds(t1, t2),
         features_match);

  gdpaudit::ConfusionCounts counts;
  counts.tp = 1400;
  counts.fn = 600;
  counts.fp = 700;
  counts.tn = 1300;
  t0 = Clock::now();
  const auto serial_mu =
      gdpaudit::estimation::PosteriorMuLowerSerial(counts, 0.9, mc_samples, 7);
  t1 = Clock::now();
  const auto parallel_mu =
      gdpaudit::estimation::PosteriorMuLower(counts, 0.9, mc_samples, 7);
  t2 = Clock::now();
  Report("posterior sampling", Seconds(t0, t1), Seconds(t1, t2),
         serial_mu.mu_emp == parallel_mu.mu_emp);
  return 0;
}
