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

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace gdpaudit::serialize {

using nlohmann::json;

std::string PartitionName(game::Partition partition) {
  switch (partition) {
    case game::Partition::kTrain:
      return "train";
    case game::Partition::kValidation:
      return "val";
    case game::Partition::kTest:
      return "test";
  }
  throw std::logic_error("unknown partition");
}

game::Partition PartitionFromName(const std::string& name) {
  if (name == "train") return game::Partition::kTrain;
  if (name == "val") return game::Partition::kValidation;
  if (name == "test") return game::Partition::kTest;
  throw std::invalid_argument("unknown partition name: " + name);
}

std::string ThreatModelName(game::ThreatModel model) {
  switch (model) {
    case game::ThreatModel::kBlack:
      return "black";
    case game::ThreatModel::kWhite:
      return "white";
    case game::ThreatModel::kHybrid:
      return "hybrid";
  }
  throw std::logic_error("unknown threat model");
}

game::ThreatModel ThreatModelFromName(const std::string& name) {
  if (name == "black") return game::ThreatModel::kBlack;
  if (name == "white") return game::ThreatModel::kWhite;
  if (name == "hybrid") return game::ThreatModel::kHybrid;
  throw std::invalid_argument("unknown threat model name: " + name);
}

std::string TrialToJsonLine(const game::TrialRecord& trial,
                            std::uint64_t seed) {
  json object;
  object["trial_id"] = trial.trial_id;
  object["label"] = trial.label;
  object["partition"] = PartitionName(trial.partition);
  object["synthetic"] = trial.synthetic.records;
  object["marginals"] = {
      {"sigma", trial.marginals.sigma},
      {"cliques", trial.marginals.cliques},
      {"tables", trial.marginals.tables},
      {"attr_cardinality", trial.marginals.attr_cardinality},
  };
  object["seed"] = seed;
  return object.dump();
}

game::TrialRecord TrialFromJsonLine(const std::string& line,
                                    std::uint64_t* seed) {
  const json object = json::parse(line);
  game::TrialRecord trial;
  trial.trial_id = object.at("trial_id").get<int>();
  trial.label = object.at("label").get<int>();
  trial.partition = PartitionFromName(object.at("partition").get<std::string>());
  trial.synthetic.records =
      object.at("synthetic").get<std::vector<mechanism::Record>>();
  const json& marginals = object.at("marginals");
  trial.marginals.sigma = marginals.at("sigma").get<double>();
  trial.marginals.cliques =
      marginals.at("cliques").get<std::vector<std::vector<int>>>();
  trial.marginals.tables =
      marginals.at("tables").get<std::vector<std::vector<double>>>();
  trial.marginals.attr_cardinality =
      marginals.at("attr_cardinality").get<std::vector<int>>();
  if (seed != nullptr) *seed = object.at("seed").get<std::uint64_t>();
  return trial;
}

void WriteTrialsJsonl(const std::string& path,
                      const std::vector<game::TrialRecord>& trials,
                      std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& trial : trials) {
    out << TrialToJsonLine(trial, seed) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<game::TrialRecord> ReadTrialsJsonl(const std::string& path,
                                               std::uint64_t* seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<game::TrialRecord> trials;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    trials.push_back(TrialFromJsonLine(line, seed));
  }
  return trials;
}

}  // namespace gdpaudit::serialize
