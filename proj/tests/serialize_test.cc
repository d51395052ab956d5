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

#include "gdpaudit/serialize.h"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "gdpaudit/game.h"

namespace game = gdpaudit::game;
namespace serialize = gdpaudit::serialize;

namespace {

std::vector<game::TrialRecord> SampleTrials() {
  game::GameConfig config;
  config.n_trials = 20;
  config.synth_size = 7;
  config.out_size = 3;
  config.workload_order = 2;
  config.split_train = 8;
  config.split_val = 4;
  config.split_test = 8;
  config.master_seed = 77;
  return game::RunGame(config);
}

}  // namespace

TEST_SUITE_BEGIN("serialize");

TEST_CASE("partition names round trip") {
  for (auto partition : {game::Partition::kTrain, game::Partition::kValidation,
                         game::Partition::kTest}) {
    CHECK(serialize::PartitionFromName(serialize::PartitionName(partition)) ==
          partition);
  }
  CHECK(serialize::PartitionName(game::Partition::kValidation) == "val");
  CHECK_THROWS_AS(serialize::PartitionFromName("holdout"),
                  std::invalid_argument);
}

TEST_CASE("threat model names round trip") {
  for (auto model : {game::ThreatModel::kBlack, game::ThreatModel::kWhite,
                     game::ThreatModel::kHybrid}) {
    CHECK(serialize::ThreatModelFromName(serialize::ThreatModelName(model)) ==
          model);
  }
  CHECK(serialize::ThreatModelName(game::ThreatModel::kHybrid) == "hybrid");
  CHECK_THROWS_AS(serialize::ThreatModelFromName("gray"),
                  std::invalid_argument);
}

TEST_CASE("trial lines survive a parse and reprint unchanged") {
  const auto trials = SampleTrials();
  for (const auto& trial : trials) {
    const std::string line = serialize::TrialToJsonLine(trial, 77);
    std::uint64_t seed = 0;
    const auto parsed = serialize::TrialFromJsonLine(line, &seed);
    CHECK(seed == 77);
    CHECK(parsed.trial_id == trial.trial_id);
    CHECK(parsed.label == trial.label);
    CHECK(parsed.partition == trial.partition);
    CHECK(parsed.synthetic.records == trial.synthetic.records);
    CHECK(parsed.marginals.cliques == trial.marginals.cliques);
    CHECK(parsed.marginals.tables == trial.marginals.tables);
    CHECK(parsed.marginals.attr_cardinality ==
          trial.marginals.attr_cardinality);
    CHECK(parsed.marginals.sigma == trial.marginals.sigma);
    // Doubles print with shortest round-trip digits, so a second print is
    // byte-identical.
    CHECK(serialize::TrialToJsonLine(parsed, seed) == line);
  }
}

TEST_CASE("trial parsing rejects malformed lines") {
  CHECK_THROWS(serialize::TrialFromJsonLine("not json", nullptr));
  CHECK_THROWS(serialize::TrialFromJsonLine("{\"trial_id\": 1}", nullptr));
}

TEST_CASE("jsonl files round trip through disk") {
  const auto trials = SampleTrials();
  const auto path =
      (std::filesystem::temp_directory_path() / "gdpaudit_serialize_test.jsonl")
          .string();
  serialize::WriteTrialsJsonl(path, trials, 77);

  std::uint64_t seed = 0;
  const auto loaded = serialize::ReadTrialsJsonl(path, &seed);
  CHECK(seed == 77);
  REQUIRE(loaded.size() == trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    CHECK(serialize::TrialToJsonLine(loaded[i], seed) ==
          serialize::TrialToJsonLine(trials[i], 77));
  }
  std::remove(path.c_str());

  CHECK_THROWS(serialize::ReadTrialsJsonl("/nonexistent/trials.jsonl", &seed));
}

TEST_SUITE_END();
