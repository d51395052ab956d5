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

#ifndef GDPAUDIT_SERIALIZE_H_
#define GDPAUDIT_SERIALIZE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gdpaudit/game.h"

namespace gdpaudit::serialize {

std::string PartitionName(game::Partition partition);
game::Partition PartitionFromName(const std::string& name);

std::string ThreatModelName(game::ThreatModel model);
game::ThreatModel ThreatModelFromName(const std::string& name);

// One trial as a single JSON object (no trailing newline) with fields
// trial_id, label, partition, synthetic, marginals, seed. Doubles use
// shortest round-trip form, so parsing the line back reproduces the trial
// bit for bit.
std::string TrialToJsonLine(const game::TrialRecord& trial,
                            std::uint64_t seed);
game::TrialRecord TrialFromJsonLine(const std::string& line,
                                    std::uint64_t* seed);

void WriteTrialsJsonl(const std::string& path,
                      const std::vector<game::TrialRecord>& trials,
                      std::uint64_t seed);
std::vector<game::TrialRecord> ReadTrialsJsonl(const std::string& path,
                                               std::uint64_t* seed);

}  // namespace gdpaudit::serialize

#endif  // GDPAUDIT_SERIALIZE_H_
