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


// Instance generators, relaxation cost schemes, the threshold CSV format and
// the instance JSON format.

#ifndef MATCH_ADVICE_DATA_H_
#define MATCH_ADVICE_DATA_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "match_advice/advice.h"
#include "match_advice/rational.h"

namespace match_advice {

enum class ChoiceMode {
  kMultiChoiceSingleRestriction,
  kSingleChoiceMultiRestriction,
};

// Erdos-Renyi graph on n_agents x n_resources plus one extra agent x* (index
// n_agents) with no edges of its own. Every resource draws a subset of the
// n_restrictions unit-cost restrictions, of size uniform in
// [0, max_restr_per_resource]. Multi-choice mode turns each drawn restriction
// into its own pair; single-choice mode makes the subset one pair. An empty
// draw makes the resource compatible with x*.
AdviceInstance GenErInstance(int n_agents, int n_resources, double edge_prob,
                             int n_restrictions, int max_restr_per_resource,
                             ChoiceMode mode, std::uint64_t seed);

struct MaxCoverageInstance {
  AdviceInstance instance;
  Cost beta;
  Rational target;  // t / (t + 1)
};

// Max-Coverage over U = {1..r} as a relaxation problem. Agent 0 is x*, agent
// j and resource j - 1 stand for element j and are joined by an edge.
// Restriction i - 1 stands for F_i and unlocks resource j - 1 for every j in
// F_i. Choosing at most q sets that cover t elements is the same as reaching
// probability t / (t + 1). Throws PreconditionError on an empty family or an
// element outside U.
MaxCoverageInstance GenMaxCoverageInstance(
    int universe_size, const std::vector<std::vector<int>>& family,
    std::int64_t q, std::int64_t t);

enum class CostScheme {
  kUniform,  // every level costs 1
  kLinear,   // the k-th level relaxed costs k
};

std::optional<CostScheme> ParseCostScheme(std::string_view name);
const char* CostSchemeName(CostScheme scheme);

// Cost of relaxing the first t levels of one attribute.
std::int64_t CostSchemeEval(CostScheme scheme, std::int64_t t);

// Cost of the level relaxed k-th (k >= 1).
Cost LevelCost(CostScheme scheme, int k);

struct ThresholdGenOptions {
  int n_agents = 8;
  int n_resources = 6;
  double edge_prob = 0.3;
  int alpha = 2;       // attribute blocks
  int max_levels = 3;  // levels per block, uniform in [1, max_levels]
  int max_cost = 2;    // per-level cost uniform in [1, max_cost]
  // Chance that a resource gets a second, alternative requirement vector.
  double alternative_prob = 0.0;
  // Chance that a resource requires nothing of a given block.
  double skip_block_prob = 0.4;
};

// Random threshold-like instance: x* is agent n_agents, each resource needs
// a suffix of each block (possibly empty); a resource that needs nothing is
// compatible. Alternatives are normalized to minimal sets.
AdviceInstance GenThresholdInstance(const ThresholdGenOptions& options,
                                    std::uint64_t seed);

// Threshold CSV files.
//   resources: id,capacity,region,physical_access,hearing_access[,zoom,
//              extra_chairs]
//   agents:    id,min_capacity,region_prefs,needs_physical,needs_hearing[,
//              needs_zoom]
// region_prefs lists regions separated by ';', most preferred first. An
// agent initially accepts only its first region; relaxing the region
// attribute one level at a time admits the next one. Regions not listed are
// never acceptable.
struct ResourceRow {
  std::string id;
  std::int64_t capacity = 0;
  std::string region;
  bool physical_access = false;
  bool hearing_access = false;
  // Optional columns, present together.
  std::optional<bool> zoom;
  std::optional<std::int64_t> extra_chairs;

  friend bool operator==(const ResourceRow&, const ResourceRow&) = default;
};

struct AgentRow {
  std::string id;
  std::int64_t min_capacity = 0;
  std::vector<std::string> region_prefs;
  bool needs_physical = false;
  bool needs_hearing = false;
  std::optional<bool> needs_zoom;

  friend bool operator==(const AgentRow&, const AgentRow&) = default;
};

struct ThresholdDataset {
  std::vector<ResourceRow> resources;
  std::vector<AgentRow> agents;

  friend bool operator==(const ThresholdDataset&,
                         const ThresholdDataset&) = default;
};

// Throws ParseError whose location is the 1-based line number and whose
// message names the file.
ThresholdDataset ReadThresholdCsv(const std::filesystem::path& resources_path,
                                  const std::filesystem::path& agents_path);
void WriteThresholdCsv(const ThresholdDataset& data,
                       const std::filesystem::path& resources_path,
                       const std::filesystem::path& agents_path);

// Relaxation instance for one agent. Blocks, in order: capacity (one level
// per `step` below the agent's minimum), region, physical, hearing and, when
// the zoom columns are present, zoom and chairs. Only blocks some resource
// needs are created. Extra chairs (in units of `step`) are an alternative to
// lowering capacity, which yields several minimal pairs per resource. Other
// agents are joined to the resources they accept without relaxation. Throws
// PreconditionError for an unknown agent id or step < 1.
AdviceInstance BuildThresholdInstance(const ThresholdDataset& data,
                                      CostScheme scheme,
                                      std::string_view agent_id,
                                      std::int64_t step = 10);

AdviceInstance LoadThresholdCsv(const std::filesystem::path& resources_path,
                                const std::filesystem::path& agents_path,
                                CostScheme scheme, std::string_view agent_id,
                                std::int64_t step = 10);

// Seeded synthetic datasets in the threshold CSV schema, sized like the
// course-classroom (144 rooms, 154 courses, with and without zoom/chairs
// columns) and holiday-activity (249 activities, 603 children) data, plus a
// small "desk" preset for quick runs. These are stand-ins, not the original
// data. Throws PreconditionError on an unknown preset name.
ThresholdDataset GenThresholdStandin(std::string_view preset,
                                     std::uint64_t seed);
std::vector<std::string> ThresholdStandinPresets();

// Instance JSON:
//   {"agents": n, "resources": m, "edges": [[a, r], ...],
//    "special_agent": x, "restrictions": [{"id", "cost", "block"?, "rank"?,
//    "name"?}], "incompatibility": [{"resource", "requires": [ids]}],
//    "type_hint"?: name}
// Costs are written as integers when integral and as decimal strings
// otherwise.
std::string InstanceToJson(const AdviceInstance& inst);
// Throws ParseError (location = byte offset) on malformed or ill-typed JSON
// and ValidationError when the instance fails ValidateInstance.
AdviceInstance InstanceFromJson(std::string_view text);

void SaveInstance(const AdviceInstance& inst,
                  const std::filesystem::path& path);
AdviceInstance LoadInstance(const std::filesystem::path& path);

}  // namespace match_advice

#endif  // MATCH_ADVICE_DATA_H_
