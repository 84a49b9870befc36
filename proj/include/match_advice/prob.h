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

// Probability that an agent is matched by a randomly chosen maximum matching.
//
// Two distributions appear here and they are not the same:
//   * the permuted Hopcroft-Karp sampler (SampleMaxMatching and the
//     estimators built on it) draws a uniformly random agent order and runs
//     the deterministic matcher. It is cheap but NOT uniform over maximum
//     matchings;
//   * ExactProbability is the fraction of all maximum matchings that match
//     the agent, i.e. the uniform distribution.
// Results that only hold under the uniform distribution (greedy guarantees,
// the block formula) are checked against ExactProbability.

#ifndef MATCH_ADVICE_PROB_H_
#define MATCH_ADVICE_PROB_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "match_advice/bigraph.h"
#include "match_advice/matchenum.h"
#include "match_advice/rational.h"

namespace match_advice {

enum class ProbMethod {
  kExactEnumeration,
  kPermutationSampling,
  kHkUno,
  kBlockFormula,
};

const char* ProbMethodName(ProbMethod method);

struct ProbEstimate {
  double value = 0.0;  // in [0, 1]
  std::uint64_t samples = 0;
  ProbMethod method = ProbMethod::kExactEnumeration;
  // Set when the value is a ratio of counts: always for exact enumeration
  // and the block formula, and hits/samples for the samplers.
  std::optional<Rational> ratio;

  static ProbEstimate FromRatio(Rational r, std::uint64_t samples,
                                ProbMethod method);
};

// Three-way comparison of two estimates; exact when both carry ratios.
int CompareProbability(const ProbEstimate& a, const ProbEstimate& b);

// One draw of the permuted Hopcroft-Karp sampler: agents are shuffled with
// an mt19937_64 seeded by `seed`, matched, and mapped back to their labels.
// x_star is accepted for interface symmetry and range-checked.
Matching SampleMaxMatching(const BipartiteGraph& g, int x_star,
                           std::uint64_t seed);

// Fraction of n_samples sampler draws that match x_star. Draw i uses
// MixSeed(seed, i), so the result does not depend on the worker count.
ProbEstimate EstimateProbability(const BipartiteGraph& g, int x_star,
                                 std::uint64_t n_samples, std::uint64_t seed);

// theta_hk sampler draws; from each, the exchange enumeration seeded at that
// draw contributes the draw plus the next theta_u maximum matchings, for
// theta_hk * (theta_u + 1) matchings in total. When a graph has fewer than
// theta_u + 1 maximum matchings the enumeration order is reused cyclically
// so the sample count stays fixed.
ProbEstimate HkUnoEstimate(const BipartiteGraph& g, int x_star,
                           std::uint64_t theta_hk, std::uint64_t theta_u,
                           std::uint64_t seed);

// containing / total over all maximum matchings. Throws
// EnumerationBudgetExceeded past `budget` matchings.
ProbEstimate ExactProbability(const BipartiteGraph& g, int x_star,
                              std::uint64_t budget = kDefaultEnumerationBudget);

// Matching mass of the special agent over the maximum matchings of the
// graph in which every block is compatible with it.
//
// `other` is the mass of maximum matchings that match the agent to a
// resource outside every block (one it was already compatible with). Those
// edges exist in every relaxation, so they count as permanently active.
struct BlockProbabilities {
  Rational unmatched;                    // p0
  Rational other;
  std::vector<Rational> blocks;          // p_l, same order as `resources`
  std::vector<std::vector<int>> resources;
  ProbMethod method = ProbMethod::kExactEnumeration;
  std::uint64_t samples = 0;  // matchings counted (exact) or drawn
};

// (other + sum_{l in active} p_l) / (p0 + other + sum_{l in active} p_l).
// With other = 0 this is the plain block formula. Returns 0 when the
// numerator is 0 and p0 > 0; throws PreconditionError when the denominator
// is 0 or an index is not a block.
ProbEstimate BlockProbability(const BlockProbabilities& bp,
                              std::span<const int> active);

struct BlockPrecomputeOptions {
  ProbMethod method = ProbMethod::kExactEnumeration;
  std::uint64_t samples = 1000;  // sampling only
  std::uint64_t seed = 0;        // sampling only
  std::uint64_t budget = kDefaultEnumerationBudget;  // exact only
};

// Builds the graph with x_star joined to every resource of every block and
// measures p0, other and p_l there. Blocks must be pairwise disjoint sets of
// resources not yet compatible with x_star, and adding them must not grow
// the maximum matching (only then do the maximum matchings of each partial
// relaxation form a subset of those measured here). Throws
// PreconditionError otherwise.
BlockProbabilities PrecomputeBlockProbabilities(
    const BipartiteGraph& g, int x_star,
    const std::vector<std::vector<int>>& blocks,
    const BlockPrecomputeOptions& options = {});

}  // namespace match_advice

#endif  // MATCH_ADVICE_PROB_H_
