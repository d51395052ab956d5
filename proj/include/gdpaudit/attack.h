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

#ifndef GDPAUDIT_ATTACK_H_
#define GDPAUDIT_ATTACK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gdpaudit/confusion.h"
#include "gdpaudit/game.h"
#include "gdpaudit/gbdt.h"
#include "gdpaudit/logistic.h"

namespace gdpaudit::attack {

enum class ThresholdCriterion { kAdvantage, kMuEstimate };
enum class ClassifierKind { kGbdt, kLogistic };

// Feature names in extraction order. Black-box features are "q:<pattern>",
// one per conjunctive wildcard query over the domain (per attribute: the
// values in order, then '*'), the first attribute varying slowest. White-box
// features are "m:<attrs>:<cell>", the flattened noisy tables in clique
// order. Hybrid is black-box then white-box.
std::vector<std::string> FeatureLayout(
    const mechanism::DomainSpec& domain,
    const mechanism::MarginalWorkload& workload, game::ThreatModel model);

// Extracts the feature vector of one trial: query counts over the synthetic
// dataset (black), raw noisy marginal cells (white), or both (hybrid).
// Throws when the trial lacks the data the threat model reads.
std::vector<double> ExtractFeatures(const game::TrialRecord& trial,
                                    game::ThreatModel model,
                                    const mechanism::DomainSpec& domain,
                                    const mechanism::MarginalWorkload& workload);

// Fills trial.features for every trial, in parallel; the serial variant is
// the reference implementation with identical output.
void FillFeatures(std::vector<game::TrialRecord>& trials,
                  game::ThreatModel model, const mechanism::DomainSpec& domain,
                  const mechanism::MarginalWorkload& workload);
void FillFeaturesSerial(std::vector<game::TrialRecord>& trials,
                        game::ThreatModel model,
                        const mechanism::DomainSpec& domain,
                        const mechanism::MarginalWorkload& workload);

// The learned distinguisher: boosted trees by default, L2 logistic
// regression for the classifier ablation. Scores are probabilities in
// [0, 1]; inference is deterministic and thread-safe.
struct Distinguisher {
  ClassifierKind kind = ClassifierKind::kGbdt;
  gbdt::Model gbdt_model;
  logistic::Model logistic_model;
  std::uint64_t seed = 0;
  int rounds_used = 0;
  std::vector<double> val_loss_trace;

  double Score(const std::vector<double>& features) const;
};

// Trains on the train split with early stopping against the validation
// split (ignored by the logistic variant). Rejects single-class training
// sets; an empty validation set disables early stopping.
Distinguisher TrainDistinguisher(const gbdt::Matrix& train_x,
                                 const std::vector<int>& train_y,
                                 const gbdt::Matrix& val_x,
                                 const std::vector<int>& val_y,
                                 std::uint64_t seed,
                                 ClassifierKind kind = ClassifierKind::kGbdt);

// Fills trial.score for every trial from its features, in parallel.
void FillScores(std::vector<game::TrialRecord>& trials,
                const Distinguisher& model);

// Scans the threshold grid (midpoints of distinct validation scores plus
// +/-inf sentinels) and returns the maximizer of the criterion: TPR-FPR for
// kAdvantage, the plug-in mu estimate for kMuEstimate. Ties prefer smaller
// FPR, then larger threshold. Degenerate validation scores yield +inf.
double SelectThreshold(const std::vector<double>& scores,
                       const std::vector<int>& labels,
                       ThresholdCriterion criterion);

// Confusion counts of the rule "predict member iff score >= tau".
ConfusionCounts EvaluateScores(const std::vector<double>& scores,
                               const std::vector<int>& labels, double tau);

// Feature matrix CSV: header "label,<feature names...>", one row per trial.
void WriteFeatureCsv(const std::string& path,
                     const std::vector<std::string>& layout,
                     const gbdt::Matrix& features,
                     const std::vector<int>& labels);

}  // namespace gdpaudit::attack

#endif  // GDPAUDIT_ATTACK_H_
