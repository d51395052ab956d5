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

#ifndef GDPAUDIT_GAME_H_
#define GDPAUDIT_GAME_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "gdpaudit/mechanism.h"

namespace gdpaudit::game {

enum class ThreatModel { kBlack, kWhite, kHybrid };
enum class Partition { kTrain, kValidation, kTest };

// Configuration of one distinguishing game. The defaults reproduce the
// standard audit: 10,000 trials at (epsilon, delta) = (1, 1e-2) over three
// binary attributes, one-way marginals, hybrid adversary, 4000/2000/4000
// train/validation/test split.
struct GameConfig {
  double epsilon = 1.0;
  double delta = 1e-2;
  int n_trials = 10000;
  int synth_size = 50;
  int out_size = 10;
  int workload_order = 1;
  ThreatModel threat_model = ThreatModel::kHybrid;
  int split_train = 4000;
  int split_val = 2000;
  int split_test = 4000;
  std::uint64_t master_seed = 110;
  mechanism::DomainSpec domain = mechanism::DomainSpec::Binary(3);

  // Throws std::invalid_argument on any violated invariant: n_trials positive
  // and even, split components nonnegative and even and summing to n_trials,
  // epsilon > 0, delta in (0,1), workload order feasible for the domain.
  void Validate() const;
};

// One trial of the game. features and score start empty; the attack module
// fills them. label 1 means the mechanism ran on d_in.
struct TrialRecord {
  int trial_id = 0;
  int label = 0;
  Partition partition = Partition::kTrain;
  mechanism::Dataset synthetic;
  mechanism::NoisyMarginals marginals;
  std::vector<double> features;
  double score = 0.0;
};

// Worst-case neighboring pair: d_out is out_size copies of the all-minimum
// record, d_in adds one all-maximum record.
std::pair<mechanism::Dataset, mechanism::Dataset> BuildNeighbors(
    const mechanism::DomainSpec& domain, int out_size);

// Deterministic partition of trial pairs (2p, 2p+1) among train/val/test so
// every partition is exactly label-balanced and hits its quota. Returns one
// entry per trial. Exposed for testing.
std::vector<Partition> AssignPartitions(const GameConfig& config);

// Runs the full game: n_trials independent mechanism executions with secret
// labels interleaved by trial id, each on its own counter-derived stream.
// Output is bit-identical regardless of thread count or execution order.
std::vector<TrialRecord> RunGame(const GameConfig& config);

// Single-threaded reference with identical output.
std::vector<TrialRecord> RunGameSerial(const GameConfig& config);

}  // namespace gdpaudit::game

#endif  // GDPAUDIT_GAME_H_
