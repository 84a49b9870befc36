// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeding and draw helpers shared by the samplers and generators.
//
// All randomness flows from std::mt19937_64, whose output sequence is fixed
// by the standard. The distribution helpers below are written out instead of
// using <random> distributions, whose algorithms are implementation-defined;
// this keeps generated instances and estimates identical across toolchains.

#ifndef MATCH_ADVICE_RANDOM_H_
#define MATCH_ADVICE_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace match_advice {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the i-th independent stream under `master`:
//   MixSeed(master, i) = SplitMix64(master ^ SplitMix64(i)).
// Sample i of every estimator uses MixSeed(seed, i), so estimates do not
// depend on how samples are spread over workers.
constexpr std::uint64_t MixSeed(std::uint64_t master, std::uint64_t i) {
  return SplitMix64(master ^ SplitMix64(i));
}

// Uniform integer in [0, n), n >= 1, by rejection on the top bits.
inline std::uint64_t UniformBelow(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool Bernoulli(Rng& rng, double p) { return UniformUnit(rng) < p; }

// Fisher-Yates.
template <typename T>
void Shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = UniformBelow(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace match_advice

#endif  // MATCH_ADVICE_RANDOM_H_
