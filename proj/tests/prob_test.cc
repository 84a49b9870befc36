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

#include <cstdlib>
#include <vector>

#include "gtest/gtest.h"
#include "match_advice/errors.h"
#include "match_advice/random.h"
#include "test_util.h"

namespace match_advice {
namespace {

using ::match_advice::testing::BruteProbability;
using ::match_advice::testing::IdentityPlusStar;
using ::match_advice::testing::RandomGraph;

TEST(SampleMaxMatchingTest, UniqueMatchingForAnySeed) {
  const BipartiteGraph g = IdentityPlusStar(3, 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(SampleMaxMatching(g, 0, seed), MaxMatching(g));
  }
}

TEST(SampleMaxMatchingTest, SameSeedSameMatching) {
  Rng rng(1);
  const BipartiteGraph g = RandomGraph(rng, 8, 8, 0.4);
  EXPECT_EQ(SampleMaxMatching(g, 0, 42), SampleMaxMatching(g, 0, 42));
}

TEST(SampleMaxMatchingTest, SymmetricAgentsSplitEvenly) {
  const BipartiteGraph g(2, 1, {{0}, {0}});
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    hits += SampleMaxMatching(g, 0, seed).MatchesAgent(0) ? 1 : 0;
  }
  EXPECT_GE(hits, 4500);
  EXPECT_LE(hits, 5500);
}

TEST(EstimateProbabilityTest, AlwaysMatchedIsExactlyOne) {
  const BipartiteGraph g(2, 2, {{0}, {1}});
  const ProbEstimate p = EstimateProbability(g, 0, 200, 3);
  EXPECT_EQ(p.value, 1.0);
  EXPECT_EQ(p.samples, 200u);
  EXPECT_EQ(p.method, ProbMethod::kPermutationSampling);
}

TEST(EstimateProbabilityTest, IsolatedIsExactlyZero) {
  EXPECT_EQ(EstimateProbability(IdentityPlusStar(3, 0), 0, 100, 3).value, 0.0);
}

TEST(EstimateProbabilityTest, CloseToItsLongRunMean) {
  const BipartiteGraph g = IdentityPlusStar(3, 3);
  const double short_run = EstimateProbability(g, 0, 1000, 17).value;
  const double long_run = EstimateProbability(g, 0, 100000, 18).value;
  EXPECT_NEAR(short_run, long_run, 0.05);
}

TEST(EstimateProbabilityTest, IndependentOfWorkerCount) {
  Rng rng(4);
  const BipartiteGraph g = RandomGraph(rng, 8, 8, 0.35);
  ::setenv("MATCH_ADVISOR_THREADS", "1", 1);
  const ProbEstimate one = EstimateProbability(g, 0, 500, 9);
  const ProbEstimate hk_one = HkUnoEstimate(g, 0, 50, 3, 9);
  ::setenv("MATCH_ADVISOR_THREADS", "4", 1);
  const ProbEstimate four = EstimateProbability(g, 0, 500, 9);
  const ProbEstimate hk_four = HkUnoEstimate(g, 0, 50, 3, 9);
  ::unsetenv("MATCH_ADVISOR_THREADS");
  EXPECT_EQ(one.ratio, four.ratio);
  EXPECT_EQ(hk_one.ratio, hk_four.ratio);
}

TEST(EstimateProbabilityTest, RejectsZeroSamples) {
  EXPECT_THROW(EstimateProbability(IdentityPlusStar(1, 1), 0, 0, 1),
               PreconditionError);
}

TEST(HkUnoTest, SampleCount) {
  Rng rng(2);
  const BipartiteGraph g = RandomGraph(rng, 6, 6, 0.5);
  EXPECT_EQ(HkUnoEstimate(g, 0, 4, 2, 1).samples, 12u);
}

TEST(HkUnoTest, ZeroExchangeStepsMatchesPlainSampler) {
  Rng rng(6);
  const BipartiteGraph g = RandomGraph(rng, 7, 6, 0.4);
  EXPECT_EQ(HkUnoEstimate(g, 1, 300, 0, 5).ratio,
            EstimateProbability(g, 1, 300, 5).ratio);
}

TEST(HkUnoTest, UniqueMatchingGivesZeroOrOne) {
  const BipartiteGraph g(3, 2, {{0}, {1}, {}});
  EXPECT_EQ(HkUnoEstimate(g, 0, 5, 3, 1).value, 1.0);
  EXPECT_EQ(HkUnoEstimate(g, 2, 5, 3, 1).value, 0.0);
}

TEST(HkUnoTest, ValuesInUnitInterval) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const BipartiteGraph g = RandomGraph(rng, 6, 5, 0.4);
    const ProbEstimate p = HkUnoEstimate(g, 0, 5, 4, trial);
    ASSERT_GE(p.value, 0.0);
    ASSERT_LE(p.value, 1.0);
  }
}

TEST(ExactProbabilityTest, CoverageReduction) {
  for (int k = 0; k <= 4; ++k) {
    const ProbEstimate p = ExactProbability(IdentityPlusStar(4, k), 0);
    EXPECT_EQ(p.ratio, Rational(k, k + 1));
    EXPECT_EQ(p.method, ProbMethod::kExactEnumeration);
  }
}

TEST(ExactProbabilityTest, TwoAgentsOneResource) {
  EXPECT_EQ(ExactProbability(BipartiteGraph(2, 1, {{0}, {0}}), 0).ratio,
            Rational(1, 2));
}

TEST(ExactProbabilityTest, MatchesBruteForce) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const BipartiteGraph g = RandomGraph(rng, 7, 6, 0.35);
    const int x = static_cast<int>(UniformBelow(rng, 7));
    ASSERT_EQ(ExactProbability(g, x).ratio, BruteProbability(g, x));
  }
}

TEST(ExactProbabilityTest, OneWhenMatchedEverywhere) {
  // x0 has a private resource, so every maximum matching uses it.
  const BipartiteGraph g(3, 3, {{0, 1}, {1, 2}, {1, 2}});
  EXPECT_EQ(ExactProbability(g, 0).value, 1.0);
}

TEST(ExactProbabilityTest, BudgetExceeded) {
  const BipartiteGraph g(3, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  EXPECT_THROW(ExactProbability(g, 0, 5), EnumerationBudgetExceeded);
}

TEST(CompareProbabilityTest, ExactWhenBothHaveRatios) {
  const ProbEstimate a = ProbEstimate::FromRatio(
      Rational(1, 3), 3, ProbMethod::kExactEnumeration);
  const ProbEstimate b = ProbEstimate::FromRatio(
      Rational(2, 6), 6, ProbMethod::kExactEnumeration);
  const ProbEstimate c = ProbEstimate::FromRatio(
      Rational(1, 2), 2, ProbMethod::kExactEnumeration);
  EXPECT_EQ(CompareProbability(a, b), 0);
  EXPECT_LT(CompareProbability(a, c), 0);
  EXPECT_GT(CompareProbability(c, a), 0);
}

BlockProbabilities Thirds() {
  BlockProbabilities bp;
  bp.unmatched = Rational(1, 3);
  bp.blocks = {Rational(1, 3), Rational(1, 3)};
  bp.resources = {{0}, {1}};
  return bp;
}

TEST(BlockProbabilityTest, DirectSubstitution) {
  const int one[] = {1};
  EXPECT_EQ(BlockProbability(Thirds(), one).ratio, Rational(1, 2));
}

TEST(BlockProbabilityTest, NothingActive) {
  EXPECT_EQ(BlockProbability(Thirds(), {}).value, 0.0);
}

TEST(BlockProbabilityTest, EverythingActive) {
  const int all[] = {0, 1};
  EXPECT_EQ(BlockProbability(Thirds(), all).ratio, Rational(2, 3));
}

TEST(BlockProbabilityTest, UndefinedAndBadIndex) {
  BlockProbabilities bp = Thirds();
  bp.unmatched = Rational(0, 1);
  EXPECT_THROW(BlockProbability(bp, {}), PreconditionError);
  const int bad[] = {2};
  EXPECT_THROW(BlockProbability(Thirds(), bad), PreconditionError);
}

TEST(PrecomputeTest, CoverageReductionSingletonBlocks) {
  const BlockProbabilities bp = PrecomputeBlockProbabilities(
      IdentityPlusStar(3, 0), 0, {{0}, {1}, {2}});
  EXPECT_EQ(bp.unmatched, Rational(1, 4));
  EXPECT_EQ(bp.other, Rational(0, 1));
  ASSERT_EQ(bp.blocks.size(), 3u);
  for (const Rational& p : bp.blocks) EXPECT_EQ(p, Rational(1, 4));
}

TEST(PrecomputeTest, RejectsBadBlocks) {
  const BipartiteGraph g = IdentityPlusStar(3, 1);
  // Overlap.
  EXPECT_THROW(PrecomputeBlockProbabilities(g, 0, {{1}, {1, 2}}),
               PreconditionError);
  // Already compatible.
  EXPECT_THROW(PrecomputeBlockProbabilities(g, 0, {{0}}), PreconditionError);
  // Grows the matching: a free resource.
  const BipartiteGraph h(2, 2, {{}, {0}});
  EXPECT_THROW(PrecomputeBlockProbabilities(h, 0, {{1}}), PreconditionError);
}

TEST(PrecomputeTest, FormulaMatchesExactOnRandomGraphs) {
  Rng rng(555);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    const BipartiteGraph g = RandomGraph(rng, 6, 6, 0.35);
    const int x = static_cast<int>(UniformBelow(rng, 6));
    const DmLabels labels = DmDecompose(g);
    // Candidate resources: not adjacent to x and not growing the matching.
    std::vector<int> pool;
    for (int y = 0; y < 6; ++y) {
      if (g.HasEdge(x, y)) continue;
      if (labels.agents[x] == DmLabel::kEven &&
          labels.resources[y] == DmLabel::kEven) {
        continue;
      }
      pool.push_back(y);
    }
    if (pool.size() < 2) continue;
    std::vector<std::vector<int>> blocks(2);
    for (int y : pool) blocks[UniformBelow(rng, 2)].push_back(y);
    if (blocks[0].empty() || blocks[1].empty()) continue;
    const BlockProbabilities bp = PrecomputeBlockProbabilities(g, x, blocks);
    const std::vector<std::vector<int>> actives = {{}, {0}, {1}, {0, 1}};
    for (const auto& active : actives) {
      std::vector<int> ys;
      for (int l : active) {
        ys.insert(ys.end(), blocks[l].begin(), blocks[l].end());
      }
      const BipartiteGraph relaxed = AddAgentEdges(g, x, ys);
      const Rational exact = BruteProbability(relaxed, x);
      if (bp.unmatched.IsZero() && bp.other.IsZero() && active.empty()) {
        continue;
      }
      ASSERT_EQ(BlockProbability(bp, active).ratio, exact);
    }
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(PrecomputeTest, SamplingMethodStaysInRange) {
  BlockPrecomputeOptions options;
  options.method = ProbMethod::kPermutationSampling;
  options.samples = 2000;
  options.seed = 3;
  const BlockProbabilities bp = PrecomputeBlockProbabilities(
      IdentityPlusStar(3, 0), 0, {{0}, {1}, {2}}, options);
  EXPECT_EQ(bp.samples, 2000u);
  const int all[] = {0, 1, 2};
  const double v = BlockProbability(bp, all).value;
  EXPECT_GE(v, 0.0);
  EXPECT_LE(v, 1.0);
}

}  // namespace
}  // namespace match_advice
