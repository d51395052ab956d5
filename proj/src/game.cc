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

#include "gdpaudit/game.h"

#include <cstdint>
#include <stdexcept>

#include "gdpaudit/accounting.h"
#include "gdpaudit/random.h"

namespace gdpaudit::game {

void GameConfig::Validate() const {
  domain.Validate();
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (n_trials <= 0 || n_trials % 2 != 0) {
    throw std::invalid_argument("n_trials must be a positive even integer");
  }
  if (synth_size < 0) throw std::invalid_argument("synth_size must be >= 0");
  if (out_size < 0) throw std::invalid_argument("out_size must be >= 0");
  if (workload_order < 1 || workload_order > 3 ||
      workload_order > domain.attribute_count()) {
    throw std::invalid_argument("workload_order infeasible for the domain");
  }
  for (int part : {split_train, split_val, split_test}) {
    if (part < 0 || part % 2 != 0) {
      throw std::invalid_argument(
          "split sizes must be nonnegative even integers");
    }
  }
  if (split_train + split_val + split_test != n_trials) {
    throw std::invalid_argument("split must sum to n_trials");
  }
}

std::pair<mechanism::Dataset, mechanism::Dataset> BuildNeighbors(
    const mechanism::DomainSpec& domain, int out_size) {
  domain.Validate();
  if (out_size < 0) throw std::invalid_argument("out_size must be >= 0");
  const auto width = static_cast<std::size_t>(domain.attribute_count());

  mechanism::Record min_record(width, 0);
  mechanism::Record max_record(width);
  for (std::size_t i = 0; i < width; ++i) {
    max_record[i] = domain.cardinality(static_cast<int>(i)) - 1;
  }

  mechanism::Dataset d_out;
  d_out.records.assign(static_cast<std::size_t>(out_size), min_record);
  mechanism::Dataset d_in = d_out;
  d_in.records.push_back(max_record);
  return {std::move(d_out), std::move(d_in)};
}

std::vector<Partition> AssignPartitions(const GameConfig& config) {
  config.Validate();
  const std::int64_t total_pairs = config.n_trials / 2;
  const std::int64_t quota[3] = {config.split_train / 2, config.split_val / 2,
                                 config.split_test / 2};
  std::int64_t assigned[3] = {0, 0, 0};

  std::vector<Partition> out(static_cast<std::size_t>(config.n_trials));
  // Each pair (2p, 2p+1) holds one trial per label, so assigning pairs keeps
  // every partition exactly label-balanced. Pair p goes to the partition with
  // the largest quota deficit quota[k]*(p+1) - assigned[k]*total_pairs, ties
  // to the smaller index; this hits every quota exactly and interleaves the
  // partitions evenly across trial order.
  for (std::int64_t p = 0; p < total_pairs; ++p) {
    int best = -1;
    std::int64_t best_deficit = 0;
    for (int k = 0; k < 3; ++k) {
      const std::int64_t deficit = quota[k] * (p + 1) - assigned[k] * total_pairs;
      if (best < 0 || deficit > best_deficit) {
        best = k;
        best_deficit = deficit;
      }
    }
    ++assigned[best];
    const auto partition = static_cast<Partition>(best);
    out[static_cast<std::size_t>(2 * p)] = partition;
    out[static_cast<std::size_t>(2 * p + 1)] = partition;
  }
  return out;
}

namespace {

std::vector<TrialRecord> RunGameImpl(const GameConfig& config, bool parallel) {
  config.Validate();
  const double rho = accounting::RhoFromDp(config.epsilon, config.delta);
  const auto workload =
      mechanism::BuildWorkload(config.domain, config.workload_order);
  const auto [d_out, d_in] = BuildNeighbors(config.domain, config.out_size);
  const auto partitions = AssignPartitions(config);

  std::vector<TrialRecord> trials(static_cast<std::size_t>(config.n_trials));

#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (int t = 0; t < config.n_trials; ++t) {
    rng::RandomStream stream(config.master_seed, rng::kDomainTrial,
                             static_cast<std::uint64_t>(t));
    TrialRecord& trial = trials[static_cast<std::size_t>(t)];
    trial.trial_id = t;
    trial.label = t % 2;
    trial.partition = partitions[static_cast<std::size_t>(t)];
    const mechanism::Dataset& data = trial.label == 1 ? d_in : d_out;
    trial.marginals =
        mechanism::Measure(data, workload, config.domain, rho, stream);
    trial.synthetic =
        mechanism::Generate(trial.marginals,
                            static_cast<std::size_t>(config.synth_size), stream);
  }
  return trials;
}

}  // namespace

std::vector<TrialRecord> RunGame(const GameConfig& config) {
  return RunGameImpl(config, true);
}

std::vector<TrialRecord> RunGameSerial(const GameConfig& config) {
  return RunGameImpl(config, false);
}

}  // namespace gdpaudit::game
