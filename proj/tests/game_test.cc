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

#include <initializer_list>
#include <omp.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gdpaudit/accounting.h"
#include "gdpaudit/mechanism.h"
#include "gdpaudit/random.h"
#include "gdpaudit/serialize.h"

namespace game = gdpaudit::game;
namespace mech = gdpaudit::mechanism;
namespace rng = gdpaudit::rng;

namespace {

game::GameConfig SmallConfig() {
  game::GameConfig config;
  config.n_trials = 200;
  config.synth_size = 20;
  config.out_size = 5;
  config.workload_order = 2;
  config.split_train = 80;
  config.split_val = 40;
  config.split_test = 80;
  config.master_seed = 1234;
  return config;
}

bool SameTrials(const std::vector<game::TrialRecord>& a,
                const std::vector<game::TrialRecord>& b) {
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

TEST_SUITE_BEGIN("game");

TEST_CASE("neighbors differ by the extreme record") {
  const auto domain = mech::DomainSpec::Binary(3);

  const auto [empty_out, single_in] = game::BuildNeighbors(domain, 0);
  CHECK(empty_out.records.empty());
  CHECK(single_in.records == std::vector<mech::Record>{{1, 1, 1}});

  const auto [d_out, d_in] = game::BuildNeighbors(domain, 2);
  CHECK(d_out.records ==
        std::vector<mech::Record>{{0, 0, 0}, {0, 0, 0}});
  CHECK(d_in.records ==
        std::vector<mech::Record>{{0, 0, 0}, {0, 0, 0}, {1, 1, 1}});

  mech::DomainSpec wide;
  wide.attributes = {{"x", 2}, {"y", 5}};
  const auto [wide_out, wide_in] = game::BuildNeighbors(wide, 1);
  CHECK(wide_out.records == std::vector<mech::Record>{{0, 0}});
  CHECK(wide_in.records == std::vector<mech::Record>{{0, 0}, {1, 4}});

  CHECK_THROWS_AS(game::BuildNeighbors(domain, -1), std::invalid_argument);
}

TEST_CASE("partition assignment hits quotas and balances labels") {
  game::GameConfig config;  // defaults: 10000 trials, 4000/2000/4000
  const auto partitions = game::AssignPartitions(config);
  REQUIRE(partitions.size() == 10000);

  std::int64_t counts[3] = {0, 0, 0};
  std::int64_t label_one[3] = {0, 0, 0};
  for (std::size_t t = 0; t < partitions.size(); ++t) {
    const auto k = static_cast<int>(partitions[t]);
    counts[k] += 1;
    label_one[k] += static_cast<std::int64_t>(t % 2);
  }
  CHECK(counts[static_cast<int>(game::Partition::kTrain)] == 4000);
  CHECK(counts[static_cast<int>(game::Partition::kValidation)] == 2000);
  CHECK(counts[static_cast<int>(game::Partition::kTest)] == 4000);
  for (int k = 0; k < 3; ++k) CHECK(label_one[k] * 2 == counts[k]);

  // Pairs stay together, and the deficit rule interleaves them in a fixed
  // five-pair cycle at the default 2:1:2 split.
  for (std::size_t p = 0; p + 1 < partitions.size(); p += 2) {
    CHECK(partitions[p] == partitions[p + 1]);
  }
  using P = game::Partition;
  const std::vector<P> expected_cycle = {P::kTrain, P::kTest, P::kValidation,
                                         P::kTrain, P::kTest};
  for (std::size_t p = 0; p < 25; ++p) {
    CHECK(partitions[2 * p] == expected_cycle[p % 5]);
  }
}

TEST_CASE("partition assignment supports empty partitions") {
  game::GameConfig config;
  config.n_trials = 2;
  config.split_train = 2;
  config.split_val = 0;
  config.split_test = 0;
  const auto partitions = game::AssignPartitions(config);
  REQUIRE(partitions.size() == 2);
  CHECK(partitions[0] == game::Partition::kTrain);
  CHECK(partitions[1] == game::Partition::kTrain);
}

TEST_CASE("config validation rejects malformed setups") {
  game::GameConfig config;
  CHECK_NOTHROW(config.Validate());

  auto broken = config;
  broken.n_trials = 9999;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);

  broken = config;
  broken.split_val = 2002;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);

  broken = config;
  broken.split_train = 3999;
  broken.split_val = 2001;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);

  broken = config;
  broken.epsilon = 0.0;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);

  broken = config;
  broken.delta = 1.0;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);

  broken = config;
  broken.domain = mech::DomainSpec::Binary(2);
  broken.workload_order = 3;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);

  broken = config;
  broken.synth_size = -1;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);

  broken = config;
  broken.out_size = -1;
  CHECK_THROWS_AS(broken.Validate(), std::invalid_argument);
}

TEST_CASE("game trials carry labels, partitions, and releases") {
  const auto config = SmallConfig();
  const auto trials = game::RunGame(config);
  REQUIRE(trials.size() == 200);

  const auto partitions = game::AssignPartitions(config);
  for (int t = 0; t < 200; ++t) {
    const auto& trial = trials[static_cast<std::size_t>(t)];
    CHECK(trial.trial_id == t);
    CHECK(trial.label == t % 2);
    CHECK(trial.partition == partitions[static_cast<std::size_t>(t)]);
    CHECK(trial.synthetic.records.size() == 20);
    CHECK(trial.synthetic.ConformsTo(config.domain));
    REQUIRE(trial.marginals.clique_count() == 2);
    CHECK(trial.marginals.tables[0].size() == 4);
    CHECK(trial.features.empty());
    CHECK(trial.score == 0.0);
  }
}

TEST_CASE("game trials replay the per-trial stream contract") {
  // Trial t draws measurement noise and synthetic records from one stream
  // seeded by (master_seed, trial domain, t); labels alternate starting at 0.
  const auto config = SmallConfig();
  const auto trials = game::RunGame(config);

  const double rho =
      gdpaudit::accounting::RhoFromDp(config.epsilon, config.delta);
  const auto workload =
      mech::BuildWorkload(config.domain, config.workload_order);
  const auto [d_out, d_in] = game::BuildNeighbors(config.domain,
                                                  config.out_size);

  for (int t : {0, 1, 7, 198}) {
    rng::RandomStream stream(config.master_seed, rng::kDomainTrial,
                             static_cast<std::uint64_t>(t));
    const auto& data = t % 2 == 1 ? d_in : d_out;
    const auto marginals =
        mech::Measure(data, workload, config.domain, rho, stream);
    const auto synthetic = mech::Generate(
        marginals, static_cast<std::size_t>(config.synth_size), stream);
    const auto& trial = trials[static_cast<std::size_t>(t)];
    CHECK(trial.marginals.tables == marginals.tables);
    CHECK(trial.synthetic.records == synthetic.records);
    CHECK(trial.marginals.sigma == marginals.sigma);
  }
}

TEST_CASE("parallel and serial games agree bit for bit") {
  const auto config = SmallConfig();
  const int before = omp_get_max_threads();
  omp_set_num_threads(4);
  const auto parallel = game::RunGame(config);
  omp_set_num_threads(before);
  const auto serial = game::RunGameSerial(config);
  CHECK(SameTrials(parallel, serial));
}

TEST_CASE("reruns of the game are identical") {
  const auto config = SmallConfig();
  CHECK(SameTrials(game::RunGame(config), game::RunGame(config)));

  auto other = config;
  other.master_seed = 4321;
  CHECK_FALSE(SameTrials(game::RunGame(config), game::RunGame(other)));
}

TEST_SUITE_END();
