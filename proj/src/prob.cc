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

#include "match_advice/prob.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "match_advice/errors.h"
#include "match_advice/parallel.h"
#include "match_advice/random.h"

namespace match_advice {
namespace {

void CheckAgent(const BipartiteGraph& g, int x_star) {
  if (x_star < 0 || x_star >= g.num_agents()) {
    throw IndexError("special agent index " + std::to_string(x_star) +
                     " out of range");
  }
}

// Counts draws in parallel; each index writes only its own slot.
std::uint64_t CountHits(std::uint64_t n,
                        const std::function<std::uint64_t(std::uint64_t)>& f) {
  std::vector<std::uint64_t> hits(n, 0);
  ParallelFor(n, [&](std::size_t i) { hits[i] = f(i); });
  return std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
}

}  // namespace

const char* ProbMethodName(ProbMethod method) {
  switch (method) {
    case ProbMethod::kExactEnumeration:
      return "exact";
    case ProbMethod::kPermutationSampling:
      return "sample";
    case ProbMethod::kHkUno:
      return "hkuno";
    case ProbMethod::kBlockFormula:
      return "block";
  }
  return "?";
}

ProbEstimate ProbEstimate::FromRatio(Rational r, std::uint64_t samples,
                                     ProbMethod method) {
  return ProbEstimate{r.ToDouble(), samples, method, r};
}

int CompareProbability(const ProbEstimate& a, const ProbEstimate& b) {
  if (a.ratio && b.ratio) {
    auto c = *a.ratio <=> *b.ratio;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return a.value < b.value ? -1 : (a.value > b.value ? 1 : 0);
}

Matching SampleMaxMatching(const BipartiteGraph& g, int x_star,
                           std::uint64_t seed) {
  CheckAgent(g, x_star);
  std::vector<int> order(g.num_agents());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  Shuffle(std::span<int>(order), rng);
  return MaxMatchingInOrder(g, order);
}

ProbEstimate EstimateProbability(const BipartiteGraph& g, int x_star,
                                 std::uint64_t n_samples, std::uint64_t seed) {
  CheckAgent(g, x_star);
  if (n_samples < 1) throw PreconditionError("n_samples must be >= 1");
  const std::uint64_t hits = CountHits(n_samples, [&](std::uint64_t i) {
    return SampleMaxMatching(g, x_star, MixSeed(seed, i)).MatchesAgent(x_star)
               ? 1
               : 0;
  });
  return ProbEstimate::FromRatio(Rational(hits, n_samples), n_samples,
                                 ProbMethod::kPermutationSampling);
}

ProbEstimate HkUnoEstimate(const BipartiteGraph& g, int x_star,
                           std::uint64_t theta_hk, std::uint64_t theta_u,
                           std::uint64_t seed) {
  CheckAgent(g, x_star);
  if (theta_hk < 1) throw PreconditionError("theta_hk must be >= 1");
  const std::uint64_t per_draw = theta_u + 1;
  const std::uint64_t hits = CountHits(theta_hk, [&](std::uint64_t i) {
    Matching start = SampleMaxMatching(g, x_star, MixSeed(seed, i));
    if (theta_u == 0) return start.MatchesAgent(x_star) ? std::uint64_t{1} : 0;
    MaxMatchingEnumerator it(g, start);
    std::vector<char> matched;
    while (matched.size() < per_draw) {
      auto m = it.Next();
      if (!m) break;
      matched.push_back(m->MatchesAgent(x_star) ? 1 : 0);
    }
    std::uint64_t count = 0;
    for (std::uint64_t j = 0; j < per_draw; ++j) {
      count += matched[j % matched.size()];
    }
    return count;
  });
  const std::uint64_t samples = theta_hk * per_draw;
  return ProbEstimate::FromRatio(Rational(hits, samples), samples,
                                 ProbMethod::kHkUno);
}

ProbEstimate ExactProbability(const BipartiteGraph& g, int x_star,
                              std::uint64_t budget) {
  CheckAgent(g, x_star);
  MatchingCount c = CountMaxMatchingsContaining(g, x_star, budget);
  return ProbEstimate::FromRatio(Rational(c.containing, c.total), c.total,
                                 ProbMethod::kExactEnumeration);
}

ProbEstimate BlockProbability(const BlockProbabilities& bp,
                              std::span<const int> active) {
  Rational matched = bp.other;
  std::vector<char> seen(bp.blocks.size(), 0);
  for (int l : active) {
    if (l < 0 || static_cast<std::size_t>(l) >= bp.blocks.size()) {
      throw PreconditionError("block index " + std::to_string(l) +
                              " is not a defined block");
    }
    if (seen[l]) continue;
    seen[l] = 1;
    matched = matched + bp.blocks[l];
  }
  const Rational denom = bp.unmatched + matched;
  if (denom.IsZero()) {
    throw PreconditionError(
        "block formula undefined: p0 and the active mass are both 0");
  }
  return ProbEstimate::FromRatio(matched / denom, bp.samples,
                                 ProbMethod::kBlockFormula);
}

BlockProbabilities PrecomputeBlockProbabilities(
    const BipartiteGraph& g, int x_star,
    const std::vector<std::vector<int>>& blocks,
    const BlockPrecomputeOptions& options) {
  CheckAgent(g, x_star);
  if (options.method != ProbMethod::kExactEnumeration &&
      options.method != ProbMethod::kPermutationSampling) {
    throw PreconditionError(
        "block probabilities are computed by exact enumeration or sampling");
  }
  std::vector<int> block_of(g.num_resources(), -1);
  std::vector<int> all;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    for (int y : blocks[l]) {
      if (y < 0 || y >= g.num_resources()) {
        throw IndexError("block resource " + std::to_string(y) +
                         " out of range");
      }
      if (block_of[y] != -1) {
        throw PreconditionError("blocks overlap at resource " +
                                std::to_string(y));
      }
      if (g.HasEdge(x_star, y)) {
        throw PreconditionError("block resource " + std::to_string(y) +
                                " is already compatible with the agent");
      }
      block_of[y] = static_cast<int>(l);
      all.push_back(y);
    }
  }
  const BipartiteGraph full = AddAgentEdges(g, x_star, all);
  if (MaxMatching(full).size() != MaxMatching(g).size()) {
    throw PreconditionError(
        "relaxing the blocks grows the maximum matching; the block formula "
        "only applies when the matching size is unchanged");
  }

  std::uint64_t unmatched = 0, other = 0, total = 0;
  std::vector<std::uint64_t> per_block(blocks.size(), 0);
  auto tally = [&](const Matching& m) {
    ++total;
    auto y = m.ResourceOf(x_star);
    if (!y) {
      ++unmatched;
    } else if (block_of[*y] == -1) {
      ++other;
    } else {
      ++per_block[block_of[*y]];
    }
  };
  if (options.method == ProbMethod::kExactEnumeration) {
    MaxMatchingEnumerator it(full);
    while (auto m = it.Next()) {
      if (total >= options.budget) {
        throw EnumerationBudgetExceeded(
            "enumeration budget exceeded: more than " +
            std::to_string(options.budget) + " maximum matchings");
      }
      tally(*m);
    }
  } else {
    if (options.samples < 1) throw PreconditionError("samples must be >= 1");
    // Sequential: tallies are order independent anyway.
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      tally(SampleMaxMatching(full, x_star, MixSeed(options.seed, i)));
    }
  }

  BlockProbabilities bp;
  bp.unmatched = Rational(unmatched, total);
  bp.other = Rational(other, total);
  for (std::uint64_t c : per_block) bp.blocks.emplace_back(c, total);
  bp.resources = blocks;
  bp.method = options.method;
  bp.samples = total;
  return bp;
}

}  // namespace match_advice
