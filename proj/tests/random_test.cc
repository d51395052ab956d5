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

#include "gdpaudit/random.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "doctest.h"

namespace rng = gdpaudit::rng;

TEST_SUITE_BEGIN("random");

// The all-ones row is the published Random123 known-answer vector for
// philox4x64x10; the rest come from an independent reference implementation
// of the round function that reproduces that vector.
TEST_CASE("philox block matches reference vectors") {
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  const auto zero = rng::Philox4x64Block(Counter{0, 0, 0, 0}, Key{0, 0});
  CHECK(zero[0] == 0x16554d9eca36314cULL);
  CHECK(zero[1] == 0xdb20fe9d672d0fdcULL);
  CHECK(zero[2] == 0xd7e772cee186176bULL);
  CHECK(zero[3] == 0x7e68b68aec7ba23bULL);

  const auto one = rng::Philox4x64Block(Counter{1, 0, 0, 0}, Key{0, 0});
  CHECK(one[0] == 0x02f4ba6408e4d89bULL);
  CHECK(one[1] == 0x3dd62b0b9ca8c5b2ULL);
  CHECK(one[2] == 0x1c8667a55d902e79ULL);
  CHECK(one[3] == 0x907d7a052fd5b4dcULL);

  const auto stream = rng::Philox4x64Block(Counter{0, 1, 0, 0}, Key{0, 0});
  CHECK(stream[0] == 0xe85facf8b3b067d6ULL);
  CHECK(stream[1] == 0xfdbc6a61c123b5f8ULL);
  CHECK(stream[2] == 0x349bde9a4b8d60c1ULL);
  CHECK(stream[3] == 0x39212690df8b178aULL);

  const auto mixed = rng::Philox4x64Block(
      Counter{0xDEADBEEFULL, 0x12345678ULL, 0, 0},
      Key{0xCAFEF00DULL, 0x0F0F0F0FULL});
  CHECK(mixed[0] == 0xf4c7de6d4284ca5dULL);
  CHECK(mixed[1] == 0xd0d322082d0cfec1ULL);
  CHECK(mixed[2] == 0xe35948ab10165834ULL);
  CHECK(mixed[3] == 0x046d671ad2c2e289ULL);

  const std::uint64_t ff = 0xFFFFFFFFFFFFFFFFULL;
  const auto saturated =
      rng::Philox4x64Block(Counter{ff, ff, ff, ff}, Key{ff, ff});
  CHECK(saturated[0] == 0x87b092c3013fe90bULL);
  CHECK(saturated[1] == 0x438c3c67be8d0224ULL);
  CHECK(saturated[2] == 0x9cc7d7c69cd777b6ULL);
  CHECK(saturated[3] == 0xa09caebf594f0ba0ULL);
}

TEST_CASE("stream words follow the block layout") {
  // Stream (seed, domain, id) draws block i = Philox({i, id, domain, 0},
  // {seed, 0}), four words per block in order.
  rng::RandomStream stream(0, 0, 0);
  const auto block0 =
      rng::Philox4x64Block({0, 0, 0, 0}, {0, 0});
  const auto block1 =
      rng::Philox4x64Block({1, 0, 0, 0}, {0, 0});
  for (int i = 0; i < 4; ++i) CHECK(stream.NextU64() == block0[i]);
  for (int i = 0; i < 4; ++i) CHECK(stream.NextU64() == block1[i]);

  rng::RandomStream other(42, rng::kDomainTrial, 7);
  const auto expected =
      rng::Philox4x64Block({0, 7, rng::kDomainTrial, 0}, {42, 0});
  CHECK(other.NextU64() == expected[0]);
}

TEST_CASE("distinct coordinates give distinct sequences") {
  rng::RandomStream base(1, 1, 1);
  rng::RandomStream seed(2, 1, 1);
  rng::RandomStream domain(1, 2, 1);
  rng::RandomStream id(1, 1, 2);
  const std::uint64_t word = base.NextU64();
  CHECK(word != seed.NextU64());
  CHECK(word != domain.NextU64());
  CHECK(word != id.NextU64());
}

TEST_CASE("uniform stays in the half-open unit interval") {
  rng::RandomStream stream(3, 3, 3);
  double low = 1.0;
  double high = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = stream.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    low = std::min(low, u);
    high = std::max(high, u);
  }
  CHECK(low < 0.01);
  CHECK(high > 0.99);
}

TEST_CASE("uniform open avoids the endpoints") {
  rng::RandomStream stream(4, 4, 4);
  for (int i = 0; i < 20000; ++i) {
    const double u = stream.UniformOpen();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform mapping uses the top 53 bits") {
  // word >> 11 scaled by 2^-53; checked against the first raw word.
  const auto block = rng::Philox4x64Block({0, 5, 2, 0}, {9, 0});
  rng::RandomStream stream(9, 2, 5);
  const double expected =
      static_cast<double>(block[0] >> 11) * 0x1p-53;
  CHECK(stream.Uniform() == expected);

  rng::RandomStream again(9, 2, 5);
  const double open =
      (static_cast<double>(block[0] >> 11) + 0.5) * 0x1p-53;
  CHECK(again.UniformOpen() == open);
}

TEST_CASE("normal draws have standard moments") {
  rng::RandomStream stream(5, 5, 5);
  const int n = 200000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = stream.Normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  // 4 sigma bands: sd(mean) = 1/sqrt(n), sd(var) ~ sqrt(2/n).
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma draws match mean and variance") {
  for (double shape : {0.5, 1.5, 4.0}) {
    rng::RandomStream stream(6, 6, static_cast<std::uint64_t>(shape * 10));
    const int n = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = stream.Gamma(shape);
      CHECK(g > 0.0);
      sum += g;
      sum_sq += g * g;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    // Gamma(k, 1) has mean k and variance k; loose 5 sigma bands.
    const double mean_sd = std::sqrt(shape / n);
    CHECK(std::abs(mean - shape) < 5.0 * mean_sd);
    CHECK(std::abs(var - shape) / shape < 0.1);
  }
}

TEST_CASE("beta draws match mean and variance") {
  const double a = 500.5;
  const double b = 1500.5;
  rng::RandomStream stream(7, 7, 7);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = stream.Beta(a, b);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  const double expect_mean = a / (a + b);
  const double expect_var =
      a * b / ((a + b) * (a + b) * (a + b + 1.0));
  CHECK(std::abs(mean - expect_mean) < 5.0 * std::sqrt(expect_var / n));
  CHECK(std::abs(var - expect_var) / expect_var < 0.1);
}

TEST_CASE("streams replay deterministically") {
  std::vector<double> first;
  std::vector<double> second;
  for (auto* out : {&first, &second}) {
    rng::RandomStream stream(123, rng::kDomainPosterior, 9);
    for (int i = 0; i < 64; ++i) out->push_back(stream.Normal());
    for (int i = 0; i < 8; ++i) out->push_back(stream.Gamma(2.5));
  }
  CHECK(first == second);
}

TEST_SUITE_END();
