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

#ifndef GDPAUDIT_RUNNER_H_
#define GDPAUDIT_RUNNER_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdpaudit/attack.h"
#include "gdpaudit/confusion.h"
#include "gdpaudit/estimation.h"
#include "gdpaudit/game.h"

namespace gdpaudit::runner {

// Raised on malformed or unknown configuration; the CLI maps it to exit
// code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full audit configuration: the game plus estimation and attack knobs.
// mc_seed follows master_seed unless the config sets it explicitly.
struct AuditConfig {
  game::GameConfig game;
  double credibility = 0.9;
  int mc_samples = 200000;
  std::uint64_t mc_seed = 0;
  bool mc_seed_explicit = false;
  attack::ThresholdCriterion criterion = attack::ThresholdCriterion::kAdvantage;
  attack::ClassifierKind classifier = attack::ClassifierKind::kGbdt;
  double baseline_confidence = 0.9;

  // Copies master_seed into mc_seed unless the config pinned one.
  void FinalizeSeeds();
  void Validate() const;
};

std::string CriterionName(attack::ThresholdCriterion criterion);
attack::ThresholdCriterion CriterionFromName(const std::string& name);
std::string ClassifierName(attack::ClassifierKind kind);
attack::ClassifierKind ClassifierFromName(const std::string& name);

// Flat key=value file; '#' starts a comment. Unknown keys are rejected.
AuditConfig ParseConfigFile(const std::string& path);

// 40/20/40 split of n pairs by quota round-robin, so small --trials
// overrides still produce a runnable (train-first) split.
void ApplyTrialsOverride(AuditConfig& config, int n_trials);

// Everything one audit produces, plus the trials for persistence.
struct AuditOutcome {
  double rho = 0.0;
  double implied_mu = 0.0;
  double mu_direct = 0.0;
  double sigma = 0.0;
  double tau_star = 0.0;
  ConfusionCounts test_counts;
  estimation::MuEstimate mu;
  double baseline_mu_lb = 0.0;
  std::vector<estimation::SweepPoint> val_sweep;
  estimation::TradeoffCurve test_curve;
  bool test_usable = false;
  double wall_seconds = 0.0;
  std::vector<game::TrialRecord> trials;
};

// Runs game -> attack -> estimation in memory.
AuditOutcome RunAuditCore(const AuditConfig& config);

// RunAuditCore plus artifacts in out_dir: trials.jsonl, valid_sweep.csv,
// tradeoff.csv, tradeoff.svg, summary.json. Artifacts are byte-reproducible
// from (config, seeds); partially written files are removed on failure.
AuditOutcome RunAudit(const AuditConfig& config, const std::string& out_dir);

struct TableRow {
  std::string variant;
  double mu_emp = 0.0;
  double tau_star = 0.0;
  double test_fpr = 0.0;
  double test_fnr = 0.0;
};

// One-factor-at-a-time ablation against the default pipeline; writes
// ablation.csv and ablation.svg.
std::vector<TableRow> RunAblation(const AuditConfig& base,
                                  const std::string& out_dir);

// Workload order x {black, hybrid} sweep; writes ablation.csv and
// ablation.svg.
std::vector<TableRow> RunMarginals(const AuditConfig& base,
                                   const std::string& out_dir);

}  // namespace gdpaudit::runner

#endif  // GDPAUDIT_RUNNER_H_
