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

#ifndef GDPAUDIT_RANDOM_H_
#define GDPAUDIT_RANDOM_H_

#include <array>
#include <cstdint>

namespace gdpaudit::rng {

// Counter-based PRF: Philox4x64 with 10 rounds. One call encrypts a 256-bit
// counter under a 128-bit key into four 64-bit words. Matches the reference
// Philox4x64-10 (same constants and round structure as numpy's generator).
std::array<std::uint64_t, 4> Philox4x64Block(
    const std::array<std::uint64_t, 4>& counter,
    const std::array<std::uint64_t, 2>& key);

// Domain separation tags. Streams with distinct (seed, domain, stream) are
// distinct counter prefixes under the same PRF and never overlap.
inline constexpr std::uint64_t kDomainTrial = 1;
inline constexpr std::uint64_t kDomainPosterior = 2;
inline constexpr std::uint64_t kDomainSimulation = 3;

// A deterministic random stream addressed by (seed, domain, stream_id).
// Block i of the stream is Philox(counter = {i, stream_id, domain, 0},
// key = {seed, 0}). Consumers draw sequentially; independent stream ids give
// independent sequences, so trials and Monte Carlo chunks can run on any
// number of threads with identical output.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t domain,
               std::uint64_t stream_id);

  std::uint64_t NextU64();

  // Uniform draw in the half-open interval [0, 1) with 53 random bits.
  double Uniform();

  // Uniform draw in the open interval (0, 1); safe input for quantiles.
  double UniformOpen();

  // Standard normal draw via inverse-CDF of UniformOpen (one word per draw).
  double Normal();

  // Gamma(shape, 1) draw, shape > 0. Marsaglia-Tsang squeeze for shape >= 1,
  // boosted by u^(1/shape) below 1. Rejection consumes a variable number of
  // words, which stays deterministic because each stream is sequential.
  double Gamma(double shape);

  // Beta(a, b) draw as a ratio of two Gamma draws.
  double Beta(double a, double b);

 private:
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_;
  std::array<std::uint64_t, 4> buffer_{};
  int position_ = 4;  // empty
};

}  // namespace gdpaudit::rng

#endif  // GDPAUDIT_RANDOM_H_
