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


#include "match_advice/data.h"

#include <bit>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "match_advice/errors.h"
#include "match_advice/random.h"
#include "match_advice/solvers.h"
#include "test_util.h"

namespace match_advice {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = fs::path(MATCH_ADVICE_SOURCE_DIR) / "tests/fixtures";

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("match_advice_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

// Cover-exists oracle: some q sets of the family cover >= t elements.
bool CoverExists(int r, const std::vector<std::vector<int>>& family,
                 std::int64_t q, std::int64_t t) {
  const int n = static_cast<int>(family.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > q) continue;
    std::set<int> covered;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) covered.insert(family[i].begin(), family[i].end());
    }
    if (static_cast<std::int64_t>(covered.size()) >= t) return true;
  }
  (void)r;
  return false;
}

TEST(GenErInstanceTest, ZeroEdgeProbability) {
  const AdviceInstance inst = GenErInstance(
      5, 4, 0.0, 3, 2, ChoiceMode::kMultiChoiceSingleRestriction, 1);
  for (const Edge& e : inst.graph.Edges()) EXPECT_EQ(e.agent, inst.x_star);
  EXPECT_EQ(inst.x_star, 5);
  EXPECT_EQ(inst.graph.num_agents(), 6);
}

TEST(GenErInstanceTest, Deterministic) {
  const auto a = GenErInstance(10, 6, 0.3, 5, 3,
                               ChoiceMode::kSingleChoiceMultiRestriction, 9);
  const auto b = GenErInstance(10, 6, 0.3, 5, 3,
                               ChoiceMode::kSingleChoiceMultiRestriction, 9);
  EXPECT_EQ(InstanceToJson(a), InstanceToJson(b));
}

TEST(GenErInstanceTest, SyntheticDefaultsAreValid) {
  for (int restrictions = 5; restrictions <= 19; ++restrictions) {
    for (int per_resource = 2; per_resource <= 4; ++per_resource) {
      for (auto mode : {ChoiceMode::kMultiChoiceSingleRestriction,
                        ChoiceMode::kSingleChoiceMultiRestriction}) {
        const AdviceInstance inst = GenErInstance(
            40, 20, 0.2, restrictions, per_resource, mode,
            restrictions * 10 + per_resource);
        ASSERT_TRUE(ValidateInstance(inst).ok());
        ASSERT_TRUE(HasUnitCosts(inst));
        for (const auto& p : inst.gamma) {
          ASSERT_LE(p.requires_set.size(), static_cast<std::size_t>(per_resource));
        }
        // Every resource is compatible or has a pair.
        std::set<int> listed;
        for (const auto& p : inst.gamma) listed.insert(p.resource);
        for (int y = 0; y < 20; ++y) {
          ASSERT_NE(listed.contains(y), inst.graph.HasEdge(inst.x_star, y));
        }
      }
    }
  }
}

TEST(GenErInstanceTest, RejectsBadArguments) {
  EXPECT_THROW(GenErInstance(0, 4, 0.2, 3, 2,
                             ChoiceMode::kMultiChoiceSingleRestriction, 1),
               PreconditionError);
  EXPECT_THROW(GenErInstance(4, 4, 1.5, 3, 2,
                             ChoiceMode::kMultiChoiceSingleRestriction, 1),
               PreconditionError);
}

TEST(GenMaxCoverageTest, TwoOverlappingSets) {
  const MaxCoverageInstance mc =
      GenMaxCoverageInstance(3, {{1, 2}, {2, 3}}, 1, 2);
  EXPECT_EQ(mc.beta, Cost::FromUnits(1));
  EXPECT_EQ(mc.target, Rational(2, 3));
  EXPECT_TRUE(ValidateInstance(mc.instance).ok());
  const int r1[] = {0};
  const BipartiteGraph g = ApplyRelaxation(mc.instance, r1);
  const auto count = CountMaxMatchingsContaining(g, 0);
  EXPECT_EQ(count.total, 3u);
  EXPECT_EQ(count.containing, 2u);
  EXPECT_EQ(ExactProbability(g, 0).ratio, Rational(2, 3));
}

TEST(GenMaxCoverageTest, OneSetCoversEverything) {
  for (int r = 1; r <= 5; ++r) {
    std::vector<int> all;
    for (int j = 1; j <= r; ++j) all.push_back(j);
    const MaxCoverageInstance mc =
        GenMaxCoverageInstance(r, {{1}, all}, 1, r);
    const Solution s =
        ExhaustiveRelax(mc.instance, mc.beta, ProbOracle::Exact());
    EXPECT_EQ(s.probability.ratio, Rational(r, r + 1));
  }
}

TEST(GenMaxCoverageTest, ZeroBudget) {
  const MaxCoverageInstance mc = GenMaxCoverageInstance(3, {{1, 2}}, 0, 1);
  const Solution s = ExhaustiveRelax(mc.instance, mc.beta, ProbOracle::Exact());
  EXPECT_TRUE(s.chosen.empty());
  EXPECT_EQ(s.probability.value, 0.0);
}

TEST(GenMaxCoverageTest, Errors) {
  EXPECT_THROW(GenMaxCoverageInstance(3, {}, 1, 1), PreconditionError);
  EXPECT_THROW(GenMaxCoverageInstance(3, {{4}}, 1, 1), PreconditionError);
}

TEST(GenMaxCoverageTest, CoverExistsIffTargetReached) {
  Rng rng(1001);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + static_cast<int>(UniformBelow(rng, 6));
    const int n_sets = 1 + static_cast<int>(UniformBelow(rng, 5));
    std::vector<std::vector<int>> family(n_sets);
    for (auto& set : family) {
      for (int j = 1; j <= r; ++j) {
        if (Bernoulli(rng, 0.4)) set.push_back(j);
      }
    }
    const std::int64_t q = UniformBelow(rng, n_sets + 1);
    const std::int64_t t = 1 + UniformBelow(rng, r);
    const MaxCoverageInstance mc = GenMaxCoverageInstance(r, family, q, t);
    const Solution s =
        ExhaustiveRelax(mc.instance, mc.beta, ProbOracle::Exact());
    ASSERT_EQ(*s.probability.ratio >= mc.target,
              CoverExists(r, family, q, t))
        << "trial " << trial;
  }
}

TEST(CostSchemeTest, Values) {
  EXPECT_EQ(CostSchemeEval(CostScheme::kUniform, 3), 3);
  EXPECT_EQ(CostSchemeEval(CostScheme::kLinear, 3), 6);
  EXPECT_EQ(CostSchemeEval(CostScheme::kUniform, 0), 0);
  EXPECT_EQ(CostSchemeEval(CostScheme::kLinear, 0), 0);
  std::int64_t sum = 0;
  for (int k = 1; k <= 4; ++k) sum += LevelCost(CostScheme::kLinear, k).units();
  EXPECT_EQ(sum, CostSchemeEval(CostScheme::kLinear, 4));
  EXPECT_EQ(ParseCostScheme("cost2"), CostScheme::kLinear);
}

TEST(GenThresholdInstanceTest, ValidAndThresholdLike) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ThresholdGenOptions options;
    options.alpha = 1 + static_cast<int>(seed % 3);
    options.alternative_prob = 0.5;
    const AdviceInstance inst = GenThresholdInstance(options, seed);
    ASSERT_TRUE(ValidateInstance(inst).ok());
    ASSERT_EQ(Classify(inst), IncompatibilityType::kThresholdLike);
  }
}

TEST(ThresholdCsvTest, HandFixture) {
  const AdviceInstance inst =
      LoadThresholdCsv(kFixtures / "csv/resources.csv",
                       kFixtures / "csv/agents.csv", CostScheme::kUniform, "A");
  ASSERT_TRUE(ValidateInstance(inst).ok());
  EXPECT_EQ(inst.x_star, 0);
  // r1 meets every requirement already.
  EXPECT_TRUE(inst.graph.HasEdge(0, 0));
  ASSERT_EQ(inst.restrictions.size(), 4u);
  EXPECT_EQ(inst.restrictions[0].name, "capacity>=20");
  EXPECT_EQ(inst.restrictions[1].name, "capacity>=30");
  EXPECT_EQ(inst.restrictions[2].name, "region:south");
  EXPECT_EQ(inst.restrictions[3].name, "physical");
  // r2: two capacity levels; r3: one capacity level, region and physical;
  // r4 is in a region A never accepts.
  EXPECT_EQ(inst.gamma,
            (IncompatibilitySet{{1, {0, 1}}, {2, {1, 2, 3}}}));
  EXPECT_EQ(Classify(inst), IncompatibilityType::kThresholdLike);
  // B accepts r3 as is.
  EXPECT_TRUE(inst.graph.HasEdge(1, 2));
  EXPECT_EQ(inst.graph.num_edges(), 2u);
}

TEST(ThresholdCsvTest, LinearCosts) {
  const AdviceInstance inst =
      LoadThresholdCsv(kFixtures / "csv/resources.csv",
                       kFixtures / "csv/agents.csv", CostScheme::kLinear, "A");
  // Relaxing to 30 is the first capacity level, to 20 the second.
  EXPECT_EQ(inst.restrictions[1].cost, Cost::FromUnits(1));
  EXPECT_EQ(inst.restrictions[0].cost, Cost::FromUnits(2));
  EXPECT_EQ(RelaxationCost(inst, inst.gamma[0].requires_set),
            Cost::FromUnits(CostSchemeEval(CostScheme::kLinear, 2)));
}

TEST(ThresholdCsvTest, ChairsAreAnAlternativeToCapacity) {
  const AdviceInstance inst = LoadThresholdCsv(
      kFixtures / "csv/resources_zc.csv", kFixtures / "csv/agents_zc.csv",
      CostScheme::kUniform, "A");
  ASSERT_TRUE(ValidateInstance(inst).ok());
  EXPECT_TRUE(inst.graph.HasEdge(0, 1));
  ASSERT_EQ(inst.restrictions.size(), 4u);
  EXPECT_EQ(inst.restrictions[2].name, "zoom");
  EXPECT_EQ(inst.restrictions[3].name, "chairs+10");
  EXPECT_EQ(inst.gamma, (IncompatibilitySet{{0, {0, 1, 2}}, {0, {1, 2, 3}}}));
  EXPECT_EQ(Classify(inst), IncompatibilityType::kThresholdLike);
}

TEST(ThresholdCsvTest, StepParameter) {
  const AdviceInstance inst = LoadThresholdCsv(
      kFixtures / "csv/resources.csv", kFixtures / "csv/agents.csv",
      CostScheme::kUniform, "A", 20);
  EXPECT_EQ(inst.restrictions[0].name, "capacity>=20");
  EXPECT_EQ(inst.gamma[0].requires_set, (RestrictionSet{0}));
}

TEST(ThresholdCsvTest, UnknownAgent) {
  EXPECT_THROW(LoadThresholdCsv(kFixtures / "csv/resources.csv",
                                kFixtures / "csv/agents.csv",
                                CostScheme::kUniform, "Z"),
               PreconditionError);
}

void ExpectParseErrorAtLine(const std::string& resources,
                            const std::string& agents, std::size_t line,
                            const std::string& text) {
  const fs::path dir = TempDir("csv_error");
  WriteFile(dir / "r.csv", resources);
  WriteFile(dir / "a.csv", agents);
  try {
    ReadThresholdCsv(dir / "r.csv", dir / "a.csv");
    FAIL() << "expected a parse error mentioning " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), line);
    EXPECT_NE(std::string(e.what()).find(text), std::string::npos) << e.what();
  }
}

const char kGoodResources[] =
    "id,capacity,region,physical_access,hearing_access\nr1,10,n,true,true\n";
const char kGoodAgents[] =
    "id,min_capacity,region_prefs,needs_physical,needs_hearing\n"
    "a,10,n,false,false\n";

TEST(ThresholdCsvTest, SchemaErrorsCarryLineNumbers) {
  ExpectParseErrorAtLine("id,capacity,region,physical_access\nr1,1,n,true\n",
                         kGoodAgents, 1, "missing column 'hearing_access'");
  ExpectParseErrorAtLine(
      "id,capacity,region,physical_access,hearing_access\n"
      "r1,10,n,true,true\nr2,big,n,true,true\n",
      kGoodAgents, 3, "non-numeric capacity");
  ExpectParseErrorAtLine(
      kGoodResources,
      "id,min_capacity,region_prefs,needs_physical,needs_hearing\n"
      "a,10,n;s;n,false,false\n",
      2, "unordered levels");
  ExpectParseErrorAtLine(
      "id,capacity,region,physical_access,hearing_access\nr1,10,n,yes,true\n",
      kGoodAgents, 2, "true or false");
  ExpectParseErrorAtLine(
      "id,capacity,region,physical_access,hearing_access,zoom\n"
      "r1,10,n,true,true,true\n",
      kGoodAgents, 1, "must appear together");
}

TEST(ThresholdCsvTest, StandinRoundTripAndSuffixProperty) {
  for (const std::string& preset : {"desk", "desk-zc"}) {
    const ThresholdDataset data = GenThresholdStandin(preset, 5);
    const fs::path dir = TempDir("standin_" + preset);
    WriteThresholdCsv(data, dir / "r.csv", dir / "a.csv");
    EXPECT_EQ(ReadThresholdCsv(dir / "r.csv", dir / "a.csv"), data);
    for (const AgentRow& a : data.agents) {
      for (auto scheme : {CostScheme::kUniform, CostScheme::kLinear}) {
        const AdviceInstance inst = BuildThresholdInstance(data, scheme, a.id);
        ASSERT_TRUE(ValidateInstance(inst).ok()) << a.id;
        if (!inst.restrictions.empty()) {
          ASSERT_EQ(Classify(inst), IncompatibilityType::kThresholdLike);
        }
      }
    }
  }
}

TEST(ThresholdCsvTest, StandinShapes) {
  const ThresholdDataset cocl = GenThresholdStandin("cocl", 1);
  EXPECT_EQ(cocl.resources.size(), 144u);
  EXPECT_EQ(cocl.agents.size(), 154u);
  EXPECT_FALSE(cocl.resources[0].zoom.has_value());
  EXPECT_TRUE(GenThresholdStandin("cocl-zc", 1).resources[0].zoom.has_value());
  const ThresholdDataset passvac = GenThresholdStandin("passvac", 1);
  EXPECT_EQ(passvac.resources.size(), 249u);
  EXPECT_EQ(passvac.agents.size(), 603u);
  EXPECT_EQ(GenThresholdStandin("desk", 3), GenThresholdStandin("desk", 3));
  EXPECT_THROW(GenThresholdStandin("nope", 1), PreconditionError);
}

TEST(InstanceJsonTest, RoundTrips) {
  std::vector<AdviceInstance> instances = {
      GenErInstance(6, 5, 0.3, 5, 3, ChoiceMode::kMultiChoiceSingleRestriction,
                    1),
      GenErInstance(6, 5, 0.3, 5, 3, ChoiceMode::kSingleChoiceMultiRestriction,
                    2),
      GenMaxCoverageInstance(3, {{1, 2}, {2, 3}}, 1, 2).instance,
      GenThresholdInstance({}, 3),
      LoadThresholdCsv(kFixtures / "csv/resources.csv",
                       kFixtures / "csv/agents.csv", CostScheme::kLinear, "A"),
  };
  instances[0].restrictions[0].cost = Cost::Parse("2.5");
  for (const AdviceInstance& inst : instances) {
    const AdviceInstance back = InstanceFromJson(InstanceToJson(inst));
    ASSERT_EQ(back, inst);
  }
  const fs::path dir = TempDir("json");
  SaveInstance(instances[3], dir / "i.json");
  EXPECT_EQ(LoadInstance(dir / "i.json"), instances[3]);
}

TEST(InstanceJsonTest, AcceptsDecimalStringCosts) {
  const AdviceInstance inst = InstanceFromJson(R"({
    "agents": 2, "resources": 1, "edges": [[1, 0]], "special_agent": 0,
    "restrictions": [{"id": 0, "cost": "1.25"}],
    "incompatibility": [{"resource": 0, "requires": [0]}]})");
  EXPECT_EQ(inst.restrictions[0].cost, Cost::Parse("1.25"));
}

TEST(InstanceJsonTest, MalformedJsonReportsByteOffset) {
  try {
    InstanceFromJson("{\"agents\": 2,, }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), 14u);
  }
}

TEST(InstanceJsonTest, TypeErrorsNameTheKey) {
  try {
    InstanceFromJson(R"({"agents": "two"})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("$.agents"), std::string::npos);
  }
  EXPECT_THROW(InstanceFromJson(R"({
    "agents": 1, "resources": 1, "edges": [], "special_agent": 0,
    "restrictions": [{"id": 0, "cost": 1.5}], "incompatibility": []})"),
               ParseError);
}

TEST(InstanceJsonTest, SuffixViolationIsAValidationError) {
  try {
    InstanceFromJson(R"({
      "agents": 2, "resources": 1, "edges": [[1, 0]], "special_agent": 0,
      "restrictions": [{"id": 0, "cost": 1, "block": 0, "rank": 1},
                       {"id": 1, "cost": 1, "block": 0, "rank": 2}],
      "incompatibility": [{"resource": 0, "requires": [0]}],
      "type_hint": "threshold_like"})");
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_NE(e.violations()[0].find("suffix"), std::string::npos);
  }
}

TEST(InstanceJsonTest, OutOfRangeEdge) {
  EXPECT_THROW(InstanceFromJson(R"({
    "agents": 1, "resources": 1, "edges": [[0, 3]], "special_agent": 0,
    "restrictions": [], "incompatibility": []})"),
               ValidationError);
}

}  // namespace
}  // namespace match_advice
