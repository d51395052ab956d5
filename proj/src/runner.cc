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

#include "gdpaudit/runner.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <system_error>
#include <utility>

#include "gdpaudit/accounting.h"
#include "gdpaudit/csv.h"
#include "gdpaudit/mechanism.h"
#include "gdpaudit/serialize.h"
#include "gdpaudit/svg.h"
#include "json.hpp"

namespace gdpaudit::runner {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string Trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return text.substr(begin, end - begin);
}

int ParseInt(const std::string& value, const std::string& key) {
  int out = 0;
  const auto result =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
    throw ConfigError("invalid integer for " + key + ": " + value);
  }
  return out;
}

std::uint64_t ParseU64(const std::string& value, const std::string& key) {
  std::uint64_t out = 0;
  const auto result =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
    throw ConfigError("invalid unsigned integer for " + key + ": " + value);
  }
  return out;
}

double ParseFloat(const std::string& value, const std::string& key) {
  double out = 0.0;
  const auto result =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
    throw ConfigError("invalid number for " + key + ": " + value);
  }
  return out;
}

std::string FormatMu(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", value);
  return buffer;
}

struct LabeledScores {
  std::vector<double> scores;
  std::vector<int> labels;
};

ordered_json ConfigToJson(const AuditConfig& config) {
  ordered_json object;
  object["epsilon"] = config.game.epsilon;
  object["delta"] = config.game.delta;
  object["n_trials"] = config.game.n_trials;
  object["synth_size"] = config.game.synth_size;
  object["out_size"] = config.game.out_size;
  object["workload_order"] = config.game.workload_order;
  object["threat_model"] = serialize::ThreatModelName(config.game.threat_model);
  object["split_train"] = config.game.split_train;
  object["split_val"] = config.game.split_val;
  object["split_test"] = config.game.split_test;
  object["master_seed"] = config.game.master_seed;
  object["credibility"] = config.credibility;
  object["mc_samples"] = config.mc_samples;
  object["mc_seed"] = config.mc_seed;
  object["criterion"] = CriterionName(config.criterion);
  object["classifier"] = ClassifierName(config.classifier);
  object["baseline_confidence"] = config.baseline_confidence;
  return object;
}

void WriteSummaryJson(const std::string& path, const AuditConfig& config,
                      const AuditOutcome& outcome) {
  ordered_json object;
  object["schema_version"] = 1;
  object["config"] = ConfigToJson(config);
  object["accounting"] = {{"rho", outcome.rho},
                          {"implied_mu", outcome.implied_mu},
                          {"mu_direct", outcome.mu_direct},
                          {"sigma", outcome.sigma}};
  object["tau_star"] = outcome.tau_star;
  object["test_counts"] = {{"tp", outcome.test_counts.tp},
                           {"fp", outcome.test_counts.fp},
                           {"tn", outcome.test_counts.tn},
                           {"fn", outcome.test_counts.fn}};
  object["mu_emp"] = {{"value", outcome.mu.mu_emp},
                      {"credibility", outcome.mu.credibility},
                      {"mc_samples", outcome.mu.mc_samples},
                      {"mc_seed", outcome.mu.mc_seed},
                      {"posterior_spec", outcome.mu.posterior_spec}};
  object["baseline_mu_lb"] = outcome.baseline_mu_lb;
  object["seeds"] = {{"master_seed", config.game.master_seed},
                     {"mc_seed", config.mc_seed}};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << object.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
  out.close();
}

void WriteValidSweepCsv(const std::string& path,
                        const std::vector<estimation::SweepPoint>& sweep,
                        bool usable) {
  csv::CsvFile file(path);
  file.Row({"threshold", "fpr", "fnr", "advantage"});
  if (usable) {
    for (const auto& point : sweep) {
      file.Row({csv::FormatDouble(point.threshold),
                csv::FormatDouble(point.counts.Fpr()),
                csv::FormatDouble(point.counts.Fnr()),
                csv::FormatDouble(point.counts.Advantage())});
    }
  }
  file.Close();
}

void WriteTradeoffCsv(const std::string& path,
                      const estimation::TradeoffCurve& curve) {
  csv::CsvFile file(path);
  file.Row({"threshold", "fpr", "fnr"});
  for (const auto& point : curve.points) {
    file.Row({csv::FormatDouble(point.threshold),
              csv::FormatDouble(point.fpr), csv::FormatDouble(point.fnr)});
  }
  file.Close();
}

void WriteTradeoffSvg(const std::string& path, const AuditConfig& config,
                      const AuditOutcome& outcome) {
  std::vector<svg::Series> series;

  svg::Series implied{"G mu=" + FormatMu(outcome.implied_mu) + " (implied)",
                      "#1f77b4", false, {}};
  svg::Series direct{"G mu=" + FormatMu(outcome.mu_direct) + " (direct)",
                     "#2ca02c", false, {}};
  svg::Series frontier{"(eps,delta)-DP frontier", "#7f7f7f", true, {}};
  for (int i = 0; i <= 200; ++i) {
    const double alpha = static_cast<double>(i) / 200.0;
    implied.points.emplace_back(
        alpha, accounting::GaussTradeoff(outcome.implied_mu, alpha));
    direct.points.emplace_back(
        alpha, accounting::GaussTradeoff(outcome.mu_direct, alpha));
    frontier.points.emplace_back(
        alpha, accounting::DpTradeoff(config.game.epsilon, config.game.delta,
                                      alpha));
  }
  series.push_back(std::move(frontier));
  series.push_back(std::move(implied));
  series.push_back(std::move(direct));

  if (outcome.test_usable) {
    svg::Series empirical{
        "empirical (mu_emp=" + FormatMu(outcome.mu.mu_emp) + ")",
        "#d62728", false, {}};
    for (const auto& point : outcome.test_curve.points) {
      empirical.points.emplace_back(point.fpr, point.fnr);
    }
    series.push_back(std::move(empirical));
  }

  svg::WriteLinePlot(path, "Membership inference tradeoff", "false positive rate",
                     "false negative rate", series, 0.0, 1.0, 0.0, 1.0);
}

void WriteTableCsv(const std::string& path,
                   const std::vector<TableRow>& rows) {
  csv::CsvFile file(path);
  file.Row({"variant", "mu_emp", "tau_star", "test_fpr", "test_fnr"});
  for (const auto& row : rows) {
    file.Row({row.variant, csv::FormatDouble(row.mu_emp),
              csv::FormatDouble(row.tau_star), csv::FormatDouble(row.test_fpr),
              csv::FormatDouble(row.test_fnr)});
  }
  file.Close();
}

void WriteTableSvg(const std::string& path, const std::string& title,
                   const std::vector<TableRow>& rows) {
  std::vector<svg::Bar> bars;
  for (const auto& row : rows) {
    bars.push_back({row.variant, row.mu_emp,
                    row.variant == "default" ? "#1f77b4" : "#9ecae1"});
  }
  svg::WriteBarChart(path, title, "mu_emp", bars);
}

TableRow MakeRow(const std::string& variant, const AuditOutcome& outcome) {
  TableRow row;
  row.variant = variant;
  row.mu_emp = outcome.mu.mu_emp;
  row.tau_star = outcome.tau_star;
  row.test_fpr = outcome.test_counts.Fpr();
  row.test_fnr = outcome.test_counts.Fnr();
  return row;
}

// Runs artifact writers with cleanup: a failure removes everything already
// written so no partial artifact set survives.
template <typename Fn>
void WithCleanup(const std::vector<std::string>& paths, Fn&& write_all) {
  try {
    write_all();
  } catch (...) {
    for (const auto& path : paths) {
      std::error_code ec;
      fs::remove(fs::path(path), ec);
    }
    throw;
  }
}

}  // namespace

void AuditConfig::FinalizeSeeds() {
  if (!mc_seed_explicit) mc_seed = game.master_seed;
}

void AuditConfig::Validate() const {
  game.Validate();
  if (!(credibility > 0.0 && credibility < 1.0)) {
    throw ConfigError("credibility must lie in (0, 1)");
  }
  if (mc_samples <= 0) throw ConfigError("mc_samples must be positive");
  if (!(baseline_confidence > 0.0 && baseline_confidence < 1.0)) {
    throw ConfigError("baseline_confidence must lie in (0, 1)");
  }
}

std::string CriterionName(attack::ThresholdCriterion criterion) {
  return criterion == attack::ThresholdCriterion::kAdvantage ? "advantage"
                                                             : "mu_estimate";
}

attack::ThresholdCriterion CriterionFromName(const std::string& name) {
  if (name == "advantage") return attack::ThresholdCriterion::kAdvantage;
  if (name == "mu_estimate") return attack::ThresholdCriterion::kMuEstimate;
  throw ConfigError("unknown criterion: " + name);
}

std::string ClassifierName(attack::ClassifierKind kind) {
  return kind == attack::ClassifierKind::kGbdt ? "gbdt" : "logistic";
}

attack::ClassifierKind ClassifierFromName(const std::string& name) {
  if (name == "gbdt") return attack::ClassifierKind::kGbdt;
  if (name == "logistic") return attack::ClassifierKind::kLogistic;
  throw ConfigError("unknown classifier: " + name);
}

AuditConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config: " + path);

  AuditConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not key=value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        " has an empty key or value");
    }

    if (key == "epsilon") {
      config.game.epsilon = ParseFloat(value, key);
    } else if (key == "delta") {
      config.game.delta = ParseFloat(value, key);
    } else if (key == "n_trials") {
      config.game.n_trials = ParseInt(value, key);
    } else if (key == "synth_size") {
      config.game.synth_size = ParseInt(value, key);
    } else if (key == "out_size") {
      config.game.out_size = ParseInt(value, key);
    } else if (key == "workload_order") {
      config.game.workload_order = ParseInt(value, key);
    } else if (key == "threat_model") {
      try {
        config.game.threat_model = serialize::ThreatModelFromName(value);
      } catch (const std::invalid_argument& error) {
        throw ConfigError(error.what());
      }
    } else if (key == "split_train") {
      config.game.split_train = ParseInt(value, key);
    } else if (key == "split_val") {
      config.game.split_val = ParseInt(value, key);
    } else if (key == "split_test") {
      config.game.split_test = ParseInt(value, key);
    } else if (key == "master_seed") {
      config.game.master_seed = ParseU64(value, key);
    } else if (key == "credibility") {
      config.credibility = ParseFloat(value, key);
    } else if (key == "mc_samples") {
      config.mc_samples = ParseInt(value, key);
    } else if (key == "mc_seed") {
      config.mc_seed = ParseU64(value, key);
      config.mc_seed_explicit = true;
    } else if (key == "criterion") {
      config.criterion = CriterionFromName(value);
    } else if (key == "classifier") {
      config.classifier = ClassifierFromName(value);
    } else if (key == "baseline_confidence") {
      config.baseline_confidence = ParseFloat(value, key);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  config.FinalizeSeeds();
  return config;
}

void ApplyTrialsOverride(AuditConfig& config, int n_trials) {
  if (n_trials <= 0 || n_trials % 2 != 0) {
    throw ConfigError("--trials must be a positive even integer");
  }
  const std::int64_t pairs = n_trials / 2;
  const std::int64_t weight[3] = {2, 1, 2};
  std::int64_t assigned[3] = {0, 0, 0};
  for (std::int64_t p = 0; p < pairs; ++p) {
    int best = -1;
    std::int64_t best_deficit = 0;
    for (int k = 0; k < 3; ++k) {
      const std::int64_t deficit = weight[k] * (p + 1) - assigned[k] * 5;
      if (best < 0 || deficit > best_deficit) {
        best = k;
        best_deficit = deficit;
      }
    }
    ++assigned[best];
  }
  config.game.n_trials = n_trials;
  config.game.split_train = static_cast<int>(2 * assigned[0]);
  config.game.split_val = static_cast<int>(2 * assigned[1]);
  config.game.split_test = static_cast<int>(2 * assigned[2]);
}

AuditOutcome RunAuditCore(const AuditConfig& config) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();

  AuditOutcome outcome;
  outcome.rho = accounting::RhoFromDp(config.game.epsilon, config.game.delta);
  outcome.implied_mu = accounting::RhoToMu(outcome.rho);
  outcome.mu_direct =
      accounting::MuFromDp(config.game.epsilon, config.game.delta);

  const auto workload = mechanism::BuildWorkload(config.game.domain,
                                                 config.game.workload_order);
  outcome.sigma = std::sqrt(static_cast<double>(workload.cliques.size()) /
                            (2.0 * outcome.rho));

  outcome.trials = game::RunGame(config.game);
  attack::FillFeatures(outcome.trials, config.game.threat_model,
                       config.game.domain, workload);

  gbdt::Matrix train_x;
  std::vector<int> train_y;
  gbdt::Matrix val_x;
  std::vector<int> val_y;
  for (const auto& trial : outcome.trials) {
    if (trial.partition == game::Partition::kTrain) {
      train_x.push_back(trial.features);
      train_y.push_back(trial.label);
    } else if (trial.partition == game::Partition::kValidation) {
      val_x.push_back(trial.features);
      val_y.push_back(trial.label);
    }
  }

  if (!train_x.empty()) {
    const auto model =
        attack::TrainDistinguisher(train_x, train_y, val_x, val_y,
                                   config.game.master_seed, config.classifier);
    attack::FillScores(outcome.trials, model);
  } else {
    for (auto& trial : outcome.trials) trial.score = 0.5;
  }

  LabeledScores val;
  LabeledScores test;
  for (const auto& trial : outcome.trials) {
    if (trial.partition == game::Partition::kValidation) {
      val.scores.push_back(trial.score);
      val.labels.push_back(trial.label);
    } else if (trial.partition == game::Partition::kTest) {
      test.scores.push_back(trial.score);
      test.labels.push_back(trial.label);
    }
  }

  outcome.tau_star =
      attack::SelectThreshold(val.scores, val.labels, config.criterion);
  if (!val.scores.empty()) {
    outcome.val_sweep = estimation::ThresholdSweep(val.scores, val.labels);
  }

  outcome.test_counts =
      attack::EvaluateScores(test.scores, test.labels, outcome.tau_star);
  outcome.test_usable = outcome.test_counts.positives() > 0 &&
                        outcome.test_counts.negatives() > 0;

  if (outcome.test_usable) {
    outcome.test_curve = estimation::EmpiricalTradeoff(test.scores, test.labels);
    outcome.mu =
        estimation::PosteriorMuLower(outcome.test_counts, config.credibility,
                                     config.mc_samples, config.mc_seed);
  } else {
    outcome.mu.mu_emp = 0.0;
    outcome.mu.credibility = config.credibility;
    outcome.mu.mc_samples = config.mc_samples;
    outcome.mu.mc_seed = config.mc_seed;
    outcome.mu.posterior_spec = "degenerate: test partition lacks both labels";
  }

  // Naive white-box baseline: the first clique's cell hit by the target
  // record, compared across test-partition labels.
  {
    mechanism::Record target(
        static_cast<std::size_t>(config.game.domain.attribute_count()));
    for (std::size_t i = 0; i < target.size(); ++i) {
      target[i] = config.game.domain.cardinality(static_cast<int>(i)) - 1;
    }
    std::vector<int> cards(target.size());
    for (std::size_t i = 0; i < cards.size(); ++i) {
      cards[i] = config.game.domain.cardinality(static_cast<int>(i));
    }
    const auto cell = static_cast<std::size_t>(
        mechanism::CellIndex(workload.cliques.front(), target, cards));
    std::vector<double> in_cells;
    std::vector<double> out_cells;
    for (const auto& trial : outcome.trials) {
      if (trial.partition != game::Partition::kTest) continue;
      const double value = trial.marginals.tables.front()[cell];
      (trial.label == 1 ? in_cells : out_cells).push_back(value);
    }
    if (in_cells.size() >= 2 && out_cells.size() >= 2) {
      outcome.baseline_mu_lb = estimation::NaiveWhiteboxMu(
          in_cells, out_cells, config.baseline_confidence, 1.0);
    }
  }

  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return outcome;
}

AuditOutcome RunAudit(const AuditConfig& config, const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir));
  AuditOutcome outcome = RunAuditCore(config);

  const std::string trials_path = (fs::path(out_dir) / "trials.jsonl").string();
  const std::string sweep_path =
      (fs::path(out_dir) / "valid_sweep.csv").string();
  const std::string curve_path = (fs::path(out_dir) / "tradeoff.csv").string();
  const std::string svg_path = (fs::path(out_dir) / "tradeoff.svg").string();
  const std::string summary_path =
      (fs::path(out_dir) / "summary.json").string();

  WithCleanup(
      {trials_path, sweep_path, curve_path, svg_path, summary_path}, [&] {
        serialize::WriteTrialsJsonl(trials_path, outcome.trials,
                                    config.game.master_seed);
        const bool val_usable = !outcome.val_sweep.empty();
        WriteValidSweepCsv(sweep_path, outcome.val_sweep, val_usable);
        WriteTradeoffCsv(curve_path, outcome.test_curve);
        WriteTradeoffSvg(svg_path, config, outcome);
        WriteSummaryJson(summary_path, config, outcome);
      });
  return outcome;
}

std::vector<TableRow> RunAblation(const AuditConfig& base,
                                  const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir));

  AuditConfig defaults = base;
  defaults.criterion = attack::ThresholdCriterion::kAdvantage;
  defaults.classifier = attack::ClassifierKind::kGbdt;

  std::vector<TableRow> rows;
  const AuditOutcome default_outcome = RunAuditCore(defaults);
  rows.push_back(MakeRow("default", default_outcome));

  {
    AuditConfig variant = defaults;
    variant.criterion = attack::ThresholdCriterion::kMuEstimate;
    rows.push_back(MakeRow("criterion=mu_estimate", RunAuditCore(variant)));
  }
  {
    TableRow row = MakeRow("estimation=chi2", default_outcome);
    row.mu_emp = default_outcome.baseline_mu_lb;
    rows.push_back(row);
  }
  for (int out_size : {0, 100}) {
    AuditConfig variant = defaults;
    variant.game.out_size = out_size;
    rows.push_back(MakeRow("out_size=" + std::to_string(out_size),
                           RunAuditCore(variant)));
  }
  {
    AuditConfig variant = defaults;
    variant.classifier = attack::ClassifierKind::kLogistic;
    rows.push_back(MakeRow("classifier=logistic", RunAuditCore(variant)));
  }
  for (const auto model : {game::ThreatModel::kBlack, game::ThreatModel::kWhite}) {
    AuditConfig variant = defaults;
    variant.game.threat_model = model;
    rows.push_back(MakeRow("threat=" + serialize::ThreatModelName(model),
                           RunAuditCore(variant)));
  }

  const std::string csv_path = (fs::path(out_dir) / "ablation.csv").string();
  const std::string svg_path = (fs::path(out_dir) / "ablation.svg").string();
  WithCleanup({csv_path, svg_path}, [&] {
    WriteTableCsv(csv_path, rows);
    WriteTableSvg(svg_path, "Audit component ablation", rows);
  });
  return rows;
}

std::vector<TableRow> RunMarginals(const AuditConfig& base,
                                   const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir));

  std::vector<TableRow> rows;
  for (int order : {1, 2, 3}) {
    for (const auto model :
         {game::ThreatModel::kBlack, game::ThreatModel::kHybrid}) {
      AuditConfig variant = base;
      variant.game.workload_order = order;
      variant.game.threat_model = model;
      rows.push_back(MakeRow("order=" + std::to_string(order) + ",threat=" +
                                 serialize::ThreatModelName(model),
                             RunAuditCore(variant)));
    }
  }

  const std::string csv_path = (fs::path(out_dir) / "ablation.csv").string();
  const std::string svg_path = (fs::path(out_dir) / "ablation.svg").string();
  WithCleanup({csv_path, svg_path}, [&] {
    WriteTableCsv(csv_path, rows);
    WriteTableSvg(svg_path, "Workload order and threat model", rows);
  });
  return rows;
}

}  // namespace gdpaudit::runner
