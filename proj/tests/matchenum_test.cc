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


#include "match_advice/matchenum.h"

#include <algorithm>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "match_advice/errors.h"
#include "match_advice/random.h"
#include "test_util.h"

namespace match_advice {
namespace {

using ::match_advice::testing::IdentityPlusStar;
using ::match_advice::testing::RandomGraph;

std::vector<Matching> Sorted(std::vector<Matching> v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST(EnumerateTest, PathHasOneMatching) {
  EXPECT_EQ(EnumerateMaxMatchings(BipartiteGraph(1, 1, {{0}})).size(), 1u);
}

TEST(EnumerateTest, CompleteTwoByTwo) {
  const BipartiteGraph g(2, 2, {{0, 1}, {0, 1}});
  const auto all = EnumerateMaxMatchings(g);
  EXPECT_EQ(all.size(), 2u);
  EXPECT_EQ(Sorted(all), BruteForceMaxMatchings(g));
}

TEST(EnumerateTest, EmptyGraphYieldsEmptyMatching) {
  const auto all = EnumerateMaxMatchings(BipartiteGraph(2, 2, {{}, {}}));
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(all[0].empty());
}

TEST(EnumerateTest, CoverageReductionWithKStarEdges) {
  for (int k = 0; k <= 4; ++k) {
    const BipartiteGraph g = IdentityPlusStar(4, k);
    const auto all = EnumerateMaxMatchings(g);
    EXPECT_EQ(all.size(), static_cast<std::size_t>(k + 1));
    EXPECT_EQ(std::count_if(all.begin(), all.end(),
                            [](const Matching& m) { return m.MatchesAgent(0); }),
              k);
  }
}

TEST(EnumerateTest, EqualsBruteForceOnRandomGraphs) {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const int na = 1 + static_cast<int>(UniformBelow(rng, 8));
    const int nr = 1 + static_cast<int>(UniformBelow(rng, 8));
    const double p = 0.1 * (1 + static_cast<int>(UniformBelow(rng, 5)));
    const BipartiteGraph g = RandomGraph(rng, na, nr, p);
    const auto all = EnumerateMaxMatchings(g);
    const std::size_t size = MaxMatching(g).size();
    for (const Matching& m : all) {
      ASSERT_TRUE(m.IsMatchingOf(g));
      ASSERT_EQ(m.size(), size);
    }
    ASSERT_EQ(Sorted(all), BruteForceMaxMatchings(g));
  }
}

TEST(EnumerateTest, CapYieldsDistinctPrefix) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const BipartiteGraph g = RandomGraph(rng, 6, 6, 0.5);
    const std::size_t total = EnumerateMaxMatchings(g).size();
    for (std::uint64_t cap : {1u, 2u, 5u, 100u}) {
      const auto some = EnumerateMaxMatchings(g, cap);
      ASSERT_EQ(some.size(), std::min<std::size_t>(cap, total));
      ASSERT_EQ(std::set<Matching>(some.begin(), some.end()).size(),
                some.size());
    }
  }
}

TEST(EnumerateTest, RejectsZeroCap) {
  EXPECT_THROW(EnumerateMaxMatchings(BipartiteGraph(1, 1, {{0}}), 0),
               PreconditionError);
}

TEST(EnumeratorTest, StartsFromGivenSeed) {
  const BipartiteGraph g(2, 2, {{0, 1}, {0, 1}});
  const Matching seed({{0, 1}, {1, 0}});
  MaxMatchingEnumerator e(g, seed);
  EXPECT_EQ(e.Next(), seed);
  EXPECT_TRUE(e.Next().has_value());
  EXPECT_FALSE(e.Next().has_value());
  EXPECT_EQ(e.produced(), 2u);
}

TEST(EnumeratorTest, RejectsBadSeeds) {
  const BipartiteGraph g(2, 2, {{0, 1}, {0}});
  EXPECT_THROW(MaxMatchingEnumerator(g, Matching({{1, 1}})), MatchingError);
  EXPECT_THROW(MaxMatchingEnumerator(g, Matching({{0, 0}})), MatchingError);
}

TEST(CountTest, TwoAgentsOneResource) {
  const auto c = CountMaxMatchingsContaining(BipartiteGraph(2, 1, {{0}, {0}}), 0);
  EXPECT_EQ(c.total, 2u);
  EXPECT_EQ(c.containing, 1u);
}

TEST(CountTest, IsolatedAgent) {
  const auto c = CountMaxMatchingsContaining(IdentityPlusStar(3, 0), 0);
  EXPECT_EQ(c.total, 1u);
  EXPECT_EQ(c.containing, 0u);
}

TEST(CountTest, CoverageReductionThreeStarEdges) {
  const auto c = CountMaxMatchingsContaining(IdentityPlusStar(3, 3), 0);
  EXPECT_EQ(c.total, 4u);
  EXPECT_EQ(c.containing, 3u);
}

TEST(CountTest, BudgetExceeded) {
  // K_{4,4} has 24 perfect matchings.
  const BipartiteGraph g(4, 4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3},
                                {0, 1, 2, 3}});
  EXPECT_EQ(CountMaxMatchingsContaining(g, 0, 24).total, 24u);
  EXPECT_THROW(CountMaxMatchingsContaining(g, 0, 23),
               EnumerationBudgetExceeded);
}

TEST(CountTest, RejectsBadAgent) {
  EXPECT_THROW(CountMaxMatchingsContaining(BipartiteGraph(1, 1, {{0}}), 1),
               IndexError);
}

TEST(BruteForceTest, SmallCases) {
  const auto empty = BruteForceMaxMatchings(BipartiteGraph());
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_TRUE(empty[0].empty());
  const auto single = BruteForceMaxMatchings(BipartiteGraph(1, 1, {{0}}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].size(), 1u);
  const BipartiteGraph k33(3, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  EXPECT_EQ(BruteForceMaxMatchings(k33).size(), 6u);
}

TEST(BruteForceTest, Guard) {
  EXPECT_THROW(BruteForceMaxMatchings(BipartiteGraph(11, 10, std::vector<std::vector<int>>(11))),
               GuardError);
}

}  // namespace
}  // namespace match_advice
