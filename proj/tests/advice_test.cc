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


#include "match_advice/advice.h"

#include <algorithm>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "match_advice/data.h"
#include "match_advice/errors.h"
#include "match_advice/random.h"
#include "test_util.h"

namespace match_advice {
namespace {

using ::match_advice::testing::IdentityPlusStar;

bool Mentions(const ValidationReport& report, const std::string& text) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const std::string& v) {
                       return v.find(text) != std::string::npos;
                     });
}

// x* = agent 0 isolated; agents 1..3 matched to resources 0..2.
AdviceInstance ThreeResources(IncompatibilitySet gamma, int n_restrictions) {
  AdviceInstance inst;
  inst.graph = IdentityPlusStar(3, 0);
  inst.x_star = 0;
  for (int i = 0; i < n_restrictions; ++i) inst.restrictions.push_back({i});
  inst.gamma = std::move(gamma);
  return inst;
}

AdviceInstance TwoBlocks() {
  // Block 0 ranks 1..2 (ids 0, 1), block 1 rank 1 (id 2).
  AdviceInstance inst = ThreeResources({{0, {1}}, {1, {0, 1}}, {2, {1, 2}}}, 3);
  inst.restrictions[0].block = 0;
  inst.restrictions[0].rank = 1;
  inst.restrictions[1].block = 0;
  inst.restrictions[1].rank = 2;
  inst.restrictions[2].block = 1;
  inst.restrictions[2].rank = 1;
  return inst;
}

TEST(CostTest, ParseAndFormat) {
  EXPECT_EQ(Cost::Parse("12"), Cost::FromUnits(12));
  EXPECT_EQ(Cost::Parse("0.5").scaled(), Cost::kScale / 2);
  EXPECT_EQ(Cost::Parse("3.250").ToString(), "3.25");
  EXPECT_EQ(Cost::FromUnits(4).ToString(), "4");
  EXPECT_TRUE(Cost::Parse("2.000").IsInteger());
  EXPECT_FALSE(Cost::Parse("2.5").IsInteger());
}

TEST(CostTest, ParseRejectsMalformed) {
  for (const char* bad : {"", "-1", "1.", ".5", "1.2345678", "abc", "1e3",
                          "1,5"}) {
    EXPECT_THROW(Cost::Parse(bad), ParseError) << bad;
  }
}

TEST(ApplyRelaxationTest, EmptySetIsOriginalGraph) {
  const AdviceInstance inst = ThreeResources({{0, {0}}}, 1);
  EXPECT_EQ(ApplyRelaxation(inst, {}), inst.graph);
}

TEST(ApplyRelaxationTest, SubsetTest) {
  const AdviceInstance inst = ThreeResources({{0, {0}}, {1, {0}}, {2, {1}}}, 2);
  const int a[] = {0};
  const BipartiteGraph g = ApplyRelaxation(inst, a);
  EXPECT_TRUE(g.HasEdge(0, 0));
  EXPECT_TRUE(g.HasEdge(0, 1));
  EXPECT_FALSE(g.HasEdge(0, 2));
}

TEST(ApplyRelaxationTest, MultiRestrictionNeedsWholeSet) {
  const AdviceInstance inst = ThreeResources({{0, {0, 1}}}, 2);
  const int a[] = {0};
  EXPECT_EQ(ApplyRelaxation(inst, a), inst.graph);
  const int ab[] = {0, 1};
  EXPECT_TRUE(ApplyRelaxation(inst, ab).HasEdge(0, 0));
}

TEST(ApplyRelaxationTest, UnknownRestriction) {
  const AdviceInstance inst = ThreeResources({{0, {0}}}, 1);
  const int a[] = {3};
  EXPECT_THROW(ApplyRelaxation(inst, a), IndexError);
  EXPECT_THROW(RelaxationCost(inst, a), IndexError);
}

TEST(RelaxationCostTest, Sums) {
  AdviceInstance inst = ThreeResources({{0, {0}}}, 2);
  inst.restrictions[1].cost = Cost::FromUnits(3);
  EXPECT_EQ(RelaxationCost(inst, {}), Cost());
  const int both[] = {0, 1};
  EXPECT_EQ(RelaxationCost(inst, both), Cost::FromUnits(4));
}

TEST(RelaxationCostTest, LinearSchemeThreeLevels) {
  AdviceInstance inst = ThreeResources({{0, {0, 1, 2}}}, 3);
  for (int k = 1; k <= 3; ++k) {
    inst.restrictions[3 - k].cost = LevelCost(CostScheme::kLinear, k);
  }
  const int all[] = {0, 1, 2};
  EXPECT_EQ(RelaxationCost(inst, all), Cost::FromUnits(6));
}

TEST(ClassifyTest, SingleChoiceSingleRestriction) {
  EXPECT_EQ(Classify(ThreeResources({{0, {0}}, {1, {1}}}, 2)),
            IncompatibilityType::kSingleChoiceSingleRestriction);
}

TEST(ClassifyTest, MultiChoiceSingleRestriction) {
  EXPECT_EQ(Classify(ThreeResources({{0, {0}}, {0, {1}}}, 2)),
            IncompatibilityType::kMultiChoiceSingleRestriction);
}

TEST(ClassifyTest, SingleChoiceMultiRestriction) {
  EXPECT_EQ(Classify(ThreeResources({{0, {0, 1}}, {1, {1}}}, 2)),
            IncompatibilityType::kSingleChoiceMultiRestriction);
}

TEST(ClassifyTest, MultiChoiceMultiRestriction) {
  EXPECT_EQ(Classify(ThreeResources({{0, {0, 1}}, {0, {2}}}, 3)),
            IncompatibilityType::kMultiChoiceMultiRestriction);
}

TEST(ClassifyTest, ThresholdLike) {
  EXPECT_EQ(Classify(TwoBlocks()), IncompatibilityType::kThresholdLike);
}

TEST(ClassifyTest, BrokenSuffixIsNotThreshold) {
  AdviceInstance inst = TwoBlocks();
  inst.gamma[0].requires_set = {0};  // rank 1 without rank 2
  EXPECT_NE(Classify(inst), IncompatibilityType::kThresholdLike);
}

TEST(ClassifyTest, ReportsMinimalityViolations) {
  EXPECT_THROW(Classify(ThreeResources({{0, {0}}, {0, {0, 1}}}, 2)),
               ValidationError);
}

TEST(ClassifyTest, GeneratorOutputs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const AdviceInstance mc = GenErInstance(
        8, 6, 0.3, 6, 3, ChoiceMode::kMultiChoiceSingleRestriction, seed);
    std::map<int, int> per_resource;
    for (const auto& p : mc.gamma) ++per_resource[p.resource];
    const bool multi = std::any_of(per_resource.begin(), per_resource.end(),
                                   [](const auto& kv) { return kv.second > 1; });
    ASSERT_EQ(Classify(mc),
              multi ? IncompatibilityType::kMultiChoiceSingleRestriction
                    : IncompatibilityType::kSingleChoiceSingleRestriction);

    const AdviceInstance sc = GenErInstance(
        8, 6, 0.3, 6, 3, ChoiceMode::kSingleChoiceMultiRestriction, seed);
    const bool wide = std::any_of(sc.gamma.begin(), sc.gamma.end(),
                                  [](const auto& p) {
                                    return p.requires_set.size() > 1;
                                  });
    ASSERT_EQ(Classify(sc),
              wide ? IncompatibilityType::kSingleChoiceMultiRestriction
                   : IncompatibilityType::kSingleChoiceSingleRestriction);
  }
}

TEST(ValidateTest, ValidInstance) {
  EXPECT_TRUE(ValidateInstance(ThreeResources({{0, {0}}}, 1)).ok());
  EXPECT_TRUE(ValidateInstance(TwoBlocks()).ok());
}

TEST(ValidateTest, Minimality) {
  const auto report =
      ValidateInstance(ThreeResources({{0, {0, 1}}, {0, {0}}}, 2));
  EXPECT_TRUE(Mentions(report, "minimality")) << report.violations.size();
}

TEST(ValidateTest, AlreadyCompatible) {
  AdviceInstance inst = ThreeResources({{0, {0}}}, 1);
  const int y[] = {0};
  inst.graph = AddAgentEdges(inst.graph, 0, y);
  EXPECT_TRUE(Mentions(ValidateInstance(inst), "already compatible"));
}

TEST(ValidateTest, SuffixPropertyWhenClaimed) {
  AdviceInstance inst = TwoBlocks();
  inst.gamma[0].requires_set = {0};
  EXPECT_TRUE(Mentions(ValidateInstance(inst), "suffix"));
}

TEST(ValidateTest, CostsRangesAndShape) {
  AdviceInstance inst = ThreeResources({{5, {0}}, {1, {7}}, {2, {}}}, 2);
  inst.restrictions[1].cost = Cost();
  inst.restrictions[0].block = 0;
  inst.x_star = 9;
  const auto report = ValidateInstance(inst);
  EXPECT_TRUE(Mentions(report, "out of range"));
  EXPECT_TRUE(Mentions(report, "unknown restriction"));
  EXPECT_TRUE(Mentions(report, "non-positive cost"));
  EXPECT_TRUE(Mentions(report, "only one of block and rank"));
  EXPECT_TRUE(Mentions(report, "empty restriction set"));
}

TEST(ValidateTest, MixedBlocksAreFlagged) {
  AdviceInstance inst = TwoBlocks();
  inst.restrictions[2].block.reset();
  inst.restrictions[2].rank.reset();
  EXPECT_TRUE(Mentions(ValidateInstance(inst), "mixed"));
}

TEST(ValidateTest, NonContiguousRanks) {
  AdviceInstance inst = TwoBlocks();
  inst.restrictions[2].rank = 3;
  EXPECT_TRUE(Mentions(ValidateInstance(inst), "contiguous"));
}

TEST(NormalizeTest, RemovesDominatedAndDuplicatePairs) {
  const AdviceInstance inst =
      ThreeResources({{0, {0, 1}}, {0, {0}}, {0, {0}}, {1, {1}}}, 2);
  const AdviceInstance n = Normalize(inst);
  EXPECT_EQ(n.gamma, (IncompatibilitySet{{0, {0}}, {1, {1}}}));
  EXPECT_TRUE(ValidateInstance(n).ok());
}

TEST(RelaxationPropertiesTest, MonotoneAdditiveAndAtMostOneLarger) {
  Rng rng(21);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const AdviceInstance inst = GenErInstance(
        6, 6, 0.3, 6, 3, ChoiceMode::kSingleChoiceMultiRestriction, seed);
    const int n = static_cast<int>(inst.restrictions.size());
    RestrictionSet a, b;
    for (int r = 0; r < n; ++r) {
      const auto pick = UniformBelow(rng, 3);
      if (pick == 0) a.push_back(r);
      if (pick != 2) b.push_back(r);  // a is a subset of b
    }
    const BipartiteGraph ga = ApplyRelaxation(inst, a);
    const BipartiteGraph gb = ApplyRelaxation(inst, b);
    for (const Edge& e : ga.Edges()) ASSERT_TRUE(gb.HasEdge(e.agent, e.resource));

    RestrictionSet rest;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                        std::back_inserter(rest));
    ASSERT_EQ(RelaxationCost(inst, b),
              RelaxationCost(inst, a) + RelaxationCost(inst, rest));

    const auto base = MaxMatching(inst.graph).size();
    const auto relaxed = MaxMatching(gb).size();
    ASSERT_TRUE(relaxed == base || relaxed == base + 1);
  }
}

TEST(IncompatibilityTypeTest, NamesRoundTrip) {
  for (auto t : {IncompatibilityType::kSingleChoiceSingleRestriction,
                 IncompatibilityType::kMultiChoiceSingleRestriction,
                 IncompatibilityType::kSingleChoiceMultiRestriction,
                 IncompatibilityType::kMultiChoiceMultiRestriction,
                 IncompatibilityType::kThresholdLike}) {
    EXPECT_EQ(ParseIncompatibilityType(IncompatibilityTypeName(t)), t);
  }
  EXPECT_FALSE(ParseIncompatibilityType("nonsense").has_value());
}

}  // namespace
}  // namespace match_advice
