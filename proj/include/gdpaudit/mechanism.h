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

#ifndef GDPAUDIT_MECHANISM_H_
#define GDPAUDIT_MECHANISM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gdpaudit/random.h"

namespace gdpaudit::mechanism {

// A discrete attribute domain: ordered attributes with finite cardinalities.
struct DomainSpec {
  struct Attribute {
    std::string name;
    int cardinality = 2;
  };
  std::vector<Attribute> attributes;

  // n binary attributes named a0, a1, ...; the audit default is Binary(3).
  static DomainSpec Binary(int n);

  int attribute_count() const { return static_cast<int>(attributes.size()); }
  int cardinality(int i) const { return attributes[i].cardinality; }
  std::uint64_t TotalSize() const;
  void Validate() const;
};

// One record is a value per attribute, each in [0, cardinality).
using Record = std::vector<int>;

// A multiset of records over a domain.
struct Dataset {
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
  bool ConformsTo(const DomainSpec& domain) const;
};

// The marginals the mechanism measures: attribute-index subsets of equal
// order. Order 1 is all singletons; orders 2 and 3 are consecutive windows
// along the declared attribute order (a fixed path graph).
struct MarginalWorkload {
  int order = 1;
  std::vector<std::vector<int>> cliques;
};

MarginalWorkload BuildWorkload(const DomainSpec& domain, int order);

// Gaussian-noised count tables released by the mechanism. Tables are kept
// unclipped here; clipping happens only when sampling synthetic data.
// attr_cardinality carries the domain shape so the marginals alone suffice
// to generate.
struct NoisyMarginals {
  std::vector<std::vector<int>> cliques;
  std::vector<std::vector<double>> tables;  // row-major over each clique
  std::vector<int> attr_cardinality;
  double sigma = 0.0;

  std::size_t clique_count() const { return cliques.size(); }
};

// Row-major cell index of a record's projection onto a clique.
int CellIndex(const std::vector<int>& clique, const Record& record,
              const std::vector<int>& attr_cardinality);

// Exact (noise-free) count table of one clique.
std::vector<double> CountTable(const Dataset& data,
                               const std::vector<int>& clique,
                               const DomainSpec& domain);

// Measures every clique of the workload with i.i.d. Gaussian noise of scale
// sigma = sqrt(m / (2*rho)), m = clique count: the budget splits evenly, and
// each marginal has L2 sensitivity 1 under add/remove-one neighbors. Noise is
// drawn clique by clique, cell by cell, so output is a pure function of the
// stream state. Table shapes come from the domain, never from the data.
NoisyMarginals Measure(const Dataset& data, const MarginalWorkload& workload,
                       const DomainSpec& domain, double rho,
                       rng::RandomStream& stream);

// Samples n records from the distribution the noisy marginals induce: each
// table is clipped at zero and normalized (uniform fallback when it sums to
// zero); order-1 tables multiply independently, higher orders factor as a
// chain along the path, conditioning each clique's last attribute on the
// previous ones (uniform conditional on zero-mass parents).
Dataset Generate(const NoisyMarginals& marginals, std::size_t n,
                 rng::RandomStream& stream);

}  // namespace gdpaudit::mechanism

#endif  // GDPAUDIT_MECHANISM_H_
