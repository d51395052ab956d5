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

#include "gdpaudit/mechanism.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace gdpaudit::mechanism {

namespace {

std::size_t TableSize(const std::vector<int>& clique,
                      const std::vector<int>& attr_cardinality) {
  std::size_t size = 1;
  for (int attr : clique) {
    size *= static_cast<std::size_t>(attr_cardinality[attr]);
  }
  return size;
}

// Categorical draw from an unnormalized nonnegative table with known mass.
int SampleCell(const std::vector<double>& weights, std::size_t offset,
               std::size_t len, double mass, rng::RandomStream& stream) {
  const double u = stream.Uniform() * mass;
  double cum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    cum += weights[offset + i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(len - 1);
}

int SampleUniformCell(std::size_t len, rng::RandomStream& stream) {
  const double u = stream.Uniform();
  auto cell = static_cast<std::size_t>(u * static_cast<double>(len));
  if (cell >= len) cell = len - 1;
  return static_cast<int>(cell);
}

// Writes the attribute values of a row-major cell index into the record.
void DecodeCell(const std::vector<int>& clique, std::size_t cell,
                const std::vector<int>& attr_cardinality, Record& record) {
  for (std::size_t i = clique.size(); i-- > 0;) {
    const int attr = clique[i];
    const auto card = static_cast<std::size_t>(attr_cardinality[attr]);
    record[attr] = static_cast<int>(cell % card);
    cell /= card;
  }
}

}  // namespace

DomainSpec DomainSpec::Binary(int n) {
  if (n < 1) throw std::invalid_argument("domain needs at least one attribute");
  DomainSpec domain;
  domain.attributes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    domain.attributes.push_back({"a" + std::to_string(i), 2});
  }
  return domain;
}

std::uint64_t DomainSpec::TotalSize() const {
  std::uint64_t size = 1;
  for (const auto& attr : attributes) {
    size *= static_cast<std::uint64_t>(attr.cardinality);
  }
  return size;
}

void DomainSpec::Validate() const {
  if (attributes.empty()) {
    throw std::invalid_argument("domain needs at least one attribute");
  }
  for (const auto& attr : attributes) {
    if (attr.cardinality < 2) {
      throw std::invalid_argument("attribute cardinality must be at least 2");
    }
  }
}

bool Dataset::ConformsTo(const DomainSpec& domain) const {
  const auto width = static_cast<std::size_t>(domain.attribute_count());
  for (const auto& record : records) {
    if (record.size() != width) return false;
    for (std::size_t i = 0; i < width; ++i) {
      if (record[i] < 0 || record[i] >= domain.cardinality(static_cast<int>(i)))
        return false;
    }
  }
  return true;
}

MarginalWorkload BuildWorkload(const DomainSpec& domain, int order) {
  domain.Validate();
  const int n = domain.attribute_count();
  if (order < 1 || order > 3) {
    throw std::invalid_argument("workload order must be 1, 2, or 3");
  }
  if (order > n) {
    throw std::invalid_argument("workload order exceeds attribute count");
  }
  MarginalWorkload workload;
  workload.order = order;
  if (order == 1) {
    for (int i = 0; i < n; ++i) workload.cliques.push_back({i});
    return workload;
  }
  for (int i = 0; i + order <= n; ++i) {
    std::vector<int> clique(static_cast<std::size_t>(order));
    for (int j = 0; j < order; ++j) clique[static_cast<std::size_t>(j)] = i + j;
    workload.cliques.push_back(std::move(clique));
  }
  return workload;
}

int CellIndex(const std::vector<int>& clique, const Record& record,
              const std::vector<int>& attr_cardinality) {
  int index = 0;
  for (int attr : clique) {
    index = index * attr_cardinality[attr] + record[static_cast<std::size_t>(attr)];
  }
  return index;
}

std::vector<double> CountTable(const Dataset& data,
                               const std::vector<int>& clique,
                               const DomainSpec& domain) {
  std::vector<int> cards(static_cast<std::size_t>(domain.attribute_count()));
  for (std::size_t i = 0; i < cards.size(); ++i) {
    cards[i] = domain.cardinality(static_cast<int>(i));
  }
  std::vector<double> table(TableSize(clique, cards), 0.0);
  for (const auto& record : data.records) {
    table[static_cast<std::size_t>(CellIndex(clique, record, cards))] += 1.0;
  }
  return table;
}

NoisyMarginals Measure(const Dataset& data, const MarginalWorkload& workload,
                       const DomainSpec& domain, double rho,
                       rng::RandomStream& stream) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (workload.cliques.empty()) {
    throw std::invalid_argument("workload must contain at least one clique");
  }
  domain.Validate();
  if (!data.ConformsTo(domain)) {
    throw std::invalid_argument("dataset does not conform to the domain");
  }

  NoisyMarginals out;
  out.cliques = workload.cliques;
  const auto m = static_cast<double>(workload.cliques.size());
  out.sigma = std::sqrt(m / (2.0 * rho));
  out.attr_cardinality.resize(
      static_cast<std::size_t>(domain.attribute_count()));
  for (std::size_t i = 0; i < out.attr_cardinality.size(); ++i) {
    out.attr_cardinality[i] = domain.cardinality(static_cast<int>(i));
  }

  out.tables.reserve(workload.cliques.size());
  for (const auto& clique : workload.cliques) {
    std::vector<double> table(TableSize(clique, out.attr_cardinality), 0.0);
    for (const auto& record : data.records) {
      table[static_cast<std::size_t>(
          CellIndex(clique, record, out.attr_cardinality))] += 1.0;
    }
    for (double& cell : table) cell += out.sigma * stream.Normal();
    out.tables.push_back(std::move(table));
  }
  return out;
}

Dataset Generate(const NoisyMarginals& marginals, std::size_t n,
                 rng::RandomStream& stream) {
  Dataset out;
  if (n == 0) return out;
  if (marginals.cliques.empty()) {
    throw std::invalid_argument("marginals must contain at least one clique");
  }

  // Clip at zero and keep per-table mass; normalization happens implicitly
  // in the categorical draws.
  std::vector<std::vector<double>> clipped(marginals.tables.size());
  std::vector<double> mass(marginals.tables.size(), 0.0);
  for (std::size_t k = 0; k < marginals.tables.size(); ++k) {
    clipped[k].resize(marginals.tables[k].size());
    for (std::size_t i = 0; i < marginals.tables[k].size(); ++i) {
      const double v = std::max(0.0, marginals.tables[k][i]);
      clipped[k][i] = v;
      mass[k] += v;
    }
  }

  const auto width = marginals.attr_cardinality.size();
  const auto order = marginals.cliques.front().size();
  out.records.assign(n, Record(width, 0));

  if (order == 1) {
    for (std::size_t r = 0; r < n; ++r) {
      Record& record = out.records[r];
      for (std::size_t k = 0; k < marginals.cliques.size(); ++k) {
        const int attr = marginals.cliques[k].front();
        const std::size_t len = clipped[k].size();
        const int value = mass[k] > 0.0
                              ? SampleCell(clipped[k], 0, len, mass[k], stream)
                              : SampleUniformCell(len, stream);
        record[static_cast<std::size_t>(attr)] = value;
      }
    }
    return out;
  }

  // Chain factorization along the path: the first clique's joint seeds the
  // chain, and each later clique conditions its last attribute on the shared
  // prefix already sampled.
  for (std::size_t r = 0; r < n; ++r) {
    Record& record = out.records[r];
    {
      const std::size_t len = clipped[0].size();
      const std::size_t cell =
          mass[0] > 0.0
              ? static_cast<std::size_t>(
                    SampleCell(clipped[0], 0, len, mass[0], stream))
              : static_cast<std::size_t>(SampleUniformCell(len, stream));
      DecodeCell(marginals.cliques[0], cell, marginals.attr_cardinality, record);
    }
    for (std::size_t k = 1; k < marginals.cliques.size(); ++k) {
      const auto& clique = marginals.cliques[k];
      const int last_attr = clique.back();
      const auto last_card =
          static_cast<std::size_t>(marginals.attr_cardinality[last_attr]);
      std::size_t prefix = 0;
      for (std::size_t i = 0; i + 1 < clique.size(); ++i) {
        const int attr = clique[i];
        prefix = prefix * static_cast<std::size_t>(
                              marginals.attr_cardinality[attr]) +
                 static_cast<std::size_t>(record[static_cast<std::size_t>(attr)]);
      }
      const std::size_t offset = prefix * last_card;
      double slice_mass = 0.0;
      for (std::size_t v = 0; v < last_card; ++v) {
        slice_mass += clipped[k][offset + v];
      }
      const int value =
          slice_mass > 0.0
              ? SampleCell(clipped[k], offset, last_card, slice_mass, stream)
              : SampleUniformCell(last_card, stream);
      record[static_cast<std::size_t>(last_attr)] = value;
    }
  }
  return out;
}

}  // namespace gdpaudit::mechanism
