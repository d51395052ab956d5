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

#include "gdpaudit/attack.h"

#include <cstddef>
#include <limits>
#include <stdexcept>

#include "gdpaudit/csv.h"
#include "gdpaudit/estimation.h"

namespace gdpaudit::attack {

namespace {

bool UsesBlack(game::ThreatModel model) {
  return model == game::ThreatModel::kBlack ||
         model == game::ThreatModel::kHybrid;
}

bool UsesWhite(game::ThreatModel model) {
  return model == game::ThreatModel::kWhite ||
         model == game::ThreatModel::kHybrid;
}

// Stride of each attribute in the query-pattern index space, where every
// attribute contributes cardinality+1 symbols (its values, then wildcard)
// and the first attribute varies slowest.
std::vector<std::size_t> QueryStrides(const mechanism::DomainSpec& domain) {
  const auto d = static_cast<std::size_t>(domain.attribute_count());
  std::vector<std::size_t> strides(d);
  std::size_t stride = 1;
  for (std::size_t i = d; i-- > 0;) {
    strides[i] = stride;
    stride *= static_cast<std::size_t>(domain.cardinality(static_cast<int>(i)) + 1);
  }
  return strides;
}

std::size_t QueryCount(const mechanism::DomainSpec& domain) {
  std::size_t count = 1;
  for (const auto& attr : domain.attributes) {
    count *= static_cast<std::size_t>(attr.cardinality + 1);
  }
  return count;
}

void CheckTrial(const game::TrialRecord& trial, game::ThreatModel model,
                const mechanism::DomainSpec& domain,
                const mechanism::MarginalWorkload& workload) {
  if (UsesBlack(model) && !trial.synthetic.ConformsTo(domain)) {
    throw std::invalid_argument(
        "black-box extraction needs synthetic data conforming to the domain");
  }
  if (UsesWhite(model)) {
    if (trial.marginals.cliques != workload.cliques) {
      throw std::invalid_argument(
          "white-box extraction needs marginals matching the workload");
    }
    if (trial.marginals.tables.size() != workload.cliques.size()) {
      throw std::invalid_argument("marginal tables missing");
    }
  }
}

}  // namespace

std::vector<std::string> FeatureLayout(
    const mechanism::DomainSpec& domain,
    const mechanism::MarginalWorkload& workload, game::ThreatModel model) {
  domain.Validate();
  std::vector<std::string> names;
  if (UsesBlack(model)) {
    const auto d = static_cast<std::size_t>(domain.attribute_count());
    const std::size_t total = QueryCount(domain);
    std::vector<int> symbol(d, 0);
    for (std::size_t q = 0; q < total; ++q) {
      std::string name = "q:";
      for (std::size_t i = 0; i < d; ++i) {
        const int card = domain.cardinality(static_cast<int>(i));
        name += symbol[i] == card ? "*" : std::to_string(symbol[i]);
      }
      names.push_back(std::move(name));
      for (std::size_t i = d; i-- > 0;) {
        if (++symbol[i] <= domain.cardinality(static_cast<int>(i))) break;
        symbol[i] = 0;
      }
    }
  }
  if (UsesWhite(model)) {
    std::vector<int> cards(static_cast<std::size_t>(domain.attribute_count()));
    for (std::size_t i = 0; i < cards.size(); ++i) {
      cards[i] = domain.cardinality(static_cast<int>(i));
    }
    for (const auto& clique : workload.cliques) {
      std::string attrs;
      std::size_t cells = 1;
      for (std::size_t i = 0; i < clique.size(); ++i) {
        if (i > 0) attrs += "-";
        attrs += std::to_string(clique[i]);
        cells *= static_cast<std::size_t>(cards[static_cast<std::size_t>(clique[i])]);
      }
      for (std::size_t c = 0; c < cells; ++c) {
        names.push_back("m:" + attrs + ":" + std::to_string(c));
      }
    }
  }
  return names;
}

std::vector<double> ExtractFeatures(
    const game::TrialRecord& trial, game::ThreatModel model,
    const mechanism::DomainSpec& domain,
    const mechanism::MarginalWorkload& workload) {
  CheckTrial(trial, model, domain, workload);
  std::vector<double> features;

  if (UsesBlack(model)) {
    const auto d = static_cast<std::size_t>(domain.attribute_count());
    const auto strides = QueryStrides(domain);
    std::vector<double> counts(QueryCount(domain), 0.0);
    // Each record matches exactly one query per subset of pinned attributes:
    // its own value where pinned, the wildcard symbol elsewhere.
    for (const auto& record : trial.synthetic.records) {
      const std::size_t subsets = std::size_t{1} << d;
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::size_t index = 0;
        for (std::size_t i = 0; i < d; ++i) {
          const int symbol = (mask >> i) & 1
                                 ? record[i]
                                 : domain.cardinality(static_cast<int>(i));
          index += static_cast<std::size_t>(symbol) * strides[i];
        }
        counts[index] += 1.0;
      }
    }
    features.insert(features.end(), counts.begin(), counts.end());
  }

  if (UsesWhite(model)) {
    for (const auto& table : trial.marginals.tables) {
      features.insert(features.end(), table.begin(), table.end());
    }
  }
  return features;
}

void FillFeatures(std::vector<game::TrialRecord>& trials,
                  game::ThreatModel model, const mechanism::DomainSpec& domain,
                  const mechanism::MarginalWorkload& workload) {
  const auto n = static_cast<std::int64_t>(trials.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    trials[static_cast<std::size_t>(i)].features = ExtractFeatures(
        trials[static_cast<std::size_t>(i)], model, domain, workload);
  }
}

void FillFeaturesSerial(std::vector<game::TrialRecord>& trials,
                        game::ThreatModel model,
                        const mechanism::DomainSpec& domain,
                        const mechanism::MarginalWorkload& workload) {
  for (auto& trial : trials) {
    trial.features = ExtractFeatures(trial, model, domain, workload);
  }
}

double Distinguisher::Score(const std::vector<double>& features) const {
  return kind == ClassifierKind::kGbdt ? gbdt_model.PredictProb(features)
                                       : logistic_model.PredictProb(features);
}

Distinguisher TrainDistinguisher(const gbdt::Matrix& train_x,
                                 const std::vector<int>& train_y,
                                 const gbdt::Matrix& val_x,
                                 const std::vector<int>& val_y,
                                 std::uint64_t seed, ClassifierKind kind) {
  Distinguisher model;
  model.kind = kind;
  model.seed = seed;
  if (kind == ClassifierKind::kGbdt) {
    model.gbdt_model = gbdt::Train(train_x, train_y, val_x, val_y);
    model.rounds_used = model.gbdt_model.rounds_used;
    model.val_loss_trace = model.gbdt_model.val_loss_trace;
  } else {
    model.logistic_model = logistic::Train(train_x, train_y);
    model.rounds_used = 1;
  }
  return model;
}

void FillScores(std::vector<game::TrialRecord>& trials,
                const Distinguisher& model) {
  const auto n = static_cast<std::int64_t>(trials.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& trial = trials[static_cast<std::size_t>(i)];
    trial.score = model.Score(trial.features);
  }
}

double SelectThreshold(const std::vector<double>& scores,
                       const std::vector<int>& labels,
                       ThresholdCriterion criterion) {
  const double inf = std::numeric_limits<double>::infinity();
  std::int64_t positives = 0;
  for (int label : labels) positives += label == 1 ? 1 : 0;
  const std::int64_t negatives =
      static_cast<std::int64_t>(labels.size()) - positives;
  if (positives == 0 || negatives == 0) return inf;

  const auto sweep = estimation::ThresholdSweep(scores, labels);
  double best_tau = inf;
  double best_value = -inf;
  // The sweep runs from +inf down, so FPR only grows along it; keeping the
  // first strict maximum realizes both tie-breaks (smaller FPR, larger tau).
  for (const auto& point : sweep) {
    const double value = criterion == ThresholdCriterion::kAdvantage
                             ? point.counts.Advantage()
                             : estimation::MuPointEstimate(point.counts);
    if (value > best_value) {
      best_value = value;
      best_tau = point.threshold;
    }
  }
  return best_tau;
}

ConfusionCounts EvaluateScores(const std::vector<double>& scores,
                               const std::vector<int>& labels, double tau) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("score/label size mismatch");
  }
  ConfusionCounts counts;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= tau;
    if (labels[i] == 1) {
      (predicted ? counts.tp : counts.fn) += 1;
    } else {
      (predicted ? counts.fp : counts.tn) += 1;
    }
  }
  return counts;
}

void WriteFeatureCsv(const std::string& path,
                     const std::vector<std::string>& layout,
                     const gbdt::Matrix& features,
                     const std::vector<int>& labels) {
  if (features.size() != labels.size()) {
    throw std::invalid_argument("feature/label size mismatch");
  }
  csv::CsvFile file(path);
  std::vector<std::string> row;
  row.reserve(layout.size() + 1);
  row.push_back("label");
  for (const auto& name : layout) row.push_back(name);
  file.Row(row);
  for (std::size_t i = 0; i < features.size(); ++i) {
    row.clear();
    row.push_back(std::to_string(labels[i]));
    for (double value : features[i]) row.push_back(csv::FormatDouble(value));
    file.Row(row);
  }
  file.Close();
}

}  // namespace gdpaudit::attack
