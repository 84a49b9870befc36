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

// Agent-resource compatibility graphs, maximum matchings (Hopcroft-Karp) and
// the Dulmage-Mendelsohn Even/Odd/Unreachable decomposition.

#ifndef MATCH_ADVICE_BIGRAPH_H_
#define MATCH_ADVICE_BIGRAPH_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace match_advice {

struct Edge {
  int agent = 0;
  int resource = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Agents and resources are dense 0-based indices. The agent-side adjacency
// is the single source of truth; rows are sorted and duplicate free.
//
// Graphs are immutable. Rows are held by shared pointer, so deriving a graph
// that differs in one agent's row (the common case when relaxing the special
// agent's restrictions) copies one row and shares the rest.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  // Rows are sorted and deduplicated. Throws IndexError on a resource index
  // outside [0, num_resources) or a row count different from num_agents.
  BipartiteGraph(int num_agents, int num_resources,
                 std::vector<std::vector<int>> adjacency);
  static BipartiteGraph FromEdges(int num_agents, int num_resources,
                                  std::span<const Edge> edges);

  int num_agents() const { return num_agents_; }
  int num_resources() const { return num_resources_; }
  std::size_t num_edges() const;

  std::span<const int> Neighbors(int agent) const { return *rows_[agent]; }
  bool HasEdge(int agent, int resource) const;
  // All edges, ordered by (agent, resource).
  std::vector<Edge> Edges() const;
  // Derived resource-side view: for each resource, its sorted agents.
  std::vector<std::vector<int>> ResourceAdjacency() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b);

 private:
  friend BipartiteGraph AddAgentEdges(const BipartiteGraph&, int,
                                      std::span<const int>);
  int num_agents_ = 0;
  int num_resources_ = 0;
  std::vector<std::shared_ptr<const std::vector<int>>> rows_;
};

// A set of vertex-disjoint agent-resource pairs, kept sorted by agent so
// that equal matchings compare equal.
class Matching {
 public:
  Matching() = default;
  // Throws MatchingError if an agent or a resource appears twice.
  explicit Matching(std::vector<Edge> pairs);

  const std::vector<Edge>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::optional<int> ResourceOf(int agent) const;
  bool MatchesAgent(int agent) const { return ResourceOf(agent).has_value(); }
  // True when every pair is an edge of g.
  bool IsMatchingOf(const BipartiteGraph& g) const;

  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> pairs_;
};

// Maximum-cardinality matching by Hopcroft-Karp. Deterministic: free agents
// are processed in ascending index and rows are scanned in ascending order.
Matching MaxMatching(const BipartiteGraph& g);

// Hopcroft-Karp run as if agents were relabeled so that agent_order[i] has
// label i. Equivalent to permuting the agents, matching, and mapping labels
// back. agent_order must be a permutation of [0, num_agents).
Matching MaxMatchingInOrder(const BipartiteGraph& g,
                            std::span<const int> agent_order);

// Number of Hopcroft-Karp invocations in this process (for tests that pin
// how many matching computations an algorithm performs).
std::uint64_t MaxMatchingCallCount();

enum class DmLabel : std::uint8_t { kEven, kOdd, kUnreachable };

const char* DmLabelName(DmLabel label);

struct DmLabels {
  std::vector<DmLabel> agents;
  std::vector<DmLabel> resources;

  std::size_t Count(DmLabel label) const;
  friend bool operator==(const DmLabels&, const DmLabels&) = default;
};

// Dulmage-Mendelsohn decomposition with respect to the maximum matching m: a
// node is Even (Odd) when an even-length (odd-length) alternating path from
// some unmatched node reaches it, Unreachable otherwise. Unmatched nodes are
// Even. The result does not depend on which maximum matching is supplied.
//
// Throws MatchingError if m is not a matching of g or is not maximum (an
// augmenting path shows up as an Even-Even edge or a node reachable at both
// parities).
DmLabels DmDecompose(const BipartiteGraph& g, const Matching& m);
DmLabels DmDecompose(const BipartiteGraph& g);

// g plus the edges {agent, y} for y in resources. Existing edges are left as
// they are; g itself is unchanged. Throws IndexError on bad indices.
BipartiteGraph AddAgentEdges(const BipartiteGraph& g, int agent,
                             std::span<const int> resources);

}  // namespace match_advice

#endif  // MATCH_ADVICE_BIGRAPH_H_
