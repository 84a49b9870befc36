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

#include "match_advice/bigraph.h"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "match_advice/errors.h"

namespace match_advice {
namespace {

std::atomic<std::uint64_t> g_max_matching_calls{0};

constexpr int kInf = std::numeric_limits<int>::max();

std::shared_ptr<const std::vector<int>> MakeRow(std::vector<int> row,
                                                int num_resources) {
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
  if (!row.empty() && (row.front() < 0 || row.back() >= num_resources)) {
    throw IndexError("resource index out of range in adjacency row");
  }
  return std::make_shared<const std::vector<int>>(std::move(row));
}

class HopcroftKarp {
 public:
  HopcroftKarp(const BipartiteGraph& g, std::span<const int> order)
      : g_(g),
        order_(order),
        mate_agent_(g.num_agents(), -1),
        mate_resource_(g.num_resources(), -1),
        dist_(g.num_agents(), kInf) {}

  Matching Run() {
    while (Bfs()) {
      for (int a : order_) {
        if (mate_agent_[a] == -1) Dfs(a);
      }
    }
    std::vector<Edge> pairs;
    for (int a = 0; a < g_.num_agents(); ++a) {
      if (mate_agent_[a] != -1) pairs.push_back({a, mate_agent_[a]});
    }
    return Matching(std::move(pairs));
  }

 private:
  bool Bfs() {
    std::deque<int> queue;
    for (int a : order_) {
      if (mate_agent_[a] == -1) {
        dist_[a] = 0;
        queue.push_back(a);
      } else {
        dist_[a] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (int y : g_.Neighbors(a)) {
        int b = mate_resource_[y];
        if (b == -1) {
          found = true;
        } else if (dist_[b] == kInf) {
          dist_[b] = dist_[a] + 1;
          queue.push_back(b);
        }
      }
    }
    return found;
  }

  bool Dfs(int a) {
    for (int y : g_.Neighbors(a)) {
      int b = mate_resource_[y];
      if (b == -1 || (dist_[b] == dist_[a] + 1 && Dfs(b))) {
        mate_agent_[a] = y;
        mate_resource_[y] = a;
        return true;
      }
    }
    dist_[a] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  std::span<const int> order_;
  std::vector<int> mate_agent_;
  std::vector<int> mate_resource_;
  std::vector<int> dist_;
};

}  // namespace

BipartiteGraph::BipartiteGraph(int num_agents, int num_resources,
                               std::vector<std::vector<int>> adjacency)
    : num_agents_(num_agents), num_resources_(num_resources) {
  if (num_agents < 0 || num_resources < 0) {
    throw IndexError("negative node count");
  }
  if (adjacency.size() != static_cast<std::size_t>(num_agents)) {
    throw IndexError("adjacency has " + std::to_string(adjacency.size()) +
                     " rows for " + std::to_string(num_agents) + " agents");
  }
  rows_.reserve(adjacency.size());
  for (auto& row : adjacency) {
    rows_.push_back(MakeRow(std::move(row), num_resources));
  }
}

BipartiteGraph BipartiteGraph::FromEdges(int num_agents, int num_resources,
                                         std::span<const Edge> edges) {
  if (num_agents < 0) throw IndexError("negative node count");
  std::vector<std::vector<int>> adjacency(num_agents);
  for (const Edge& e : edges) {
    if (e.agent < 0 || e.agent >= num_agents) {
      throw IndexError("edge agent index " + std::to_string(e.agent) +
                       " out of range");
    }
    adjacency[e.agent].push_back(e.resource);
  }
  return BipartiteGraph(num_agents, num_resources, std::move(adjacency));
}

std::size_t BipartiteGraph::num_edges() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row->size();
  return n;
}

bool BipartiteGraph::HasEdge(int agent, int resource) const {
  const auto& row = *rows_[agent];
  return std::binary_search(row.begin(), row.end(), resource);
}

std::vector<Edge> BipartiteGraph::Edges() const {
  std::vector<Edge> edges;
  for (int a = 0; a < num_agents_; ++a) {
    for (int y : *rows_[a]) edges.push_back({a, y});
  }
  return edges;
}

std::vector<std::vector<int>> BipartiteGraph::ResourceAdjacency() const {
  std::vector<std::vector<int>> by_resource(num_resources_);
  for (int a = 0; a < num_agents_; ++a) {
    for (int y : *rows_[a]) by_resource[y].push_back(a);
  }
  return by_resource;
}

bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
  if (a.num_agents_ != b.num_agents_ || a.num_resources_ != b.num_resources_) {
    return false;
  }
  for (int i = 0; i < a.num_agents_; ++i) {
    if (a.rows_[i] != b.rows_[i] && *a.rows_[i] != *b.rows_[i]) return false;
  }
  return true;
}

Matching::Matching(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t i = 1; i < pairs_.size(); ++i) {
    if (pairs_[i].agent == pairs_[i - 1].agent) {
      throw MatchingError("agent " + std::to_string(pairs_[i].agent) +
                          " matched twice");
    }
  }
  std::vector<int> resources;
  resources.reserve(pairs_.size());
  for (const Edge& e : pairs_) resources.push_back(e.resource);
  std::sort(resources.begin(), resources.end());
  if (std::adjacent_find(resources.begin(), resources.end()) !=
      resources.end()) {
    throw MatchingError("resource matched twice");
  }
}

std::optional<int> Matching::ResourceOf(int agent) const {
  auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), agent,
      [](const Edge& e, int a) { return e.agent < a; });
  if (it == pairs_.end() || it->agent != agent) return std::nullopt;
  return it->resource;
}

bool Matching::IsMatchingOf(const BipartiteGraph& g) const {
  return std::all_of(pairs_.begin(), pairs_.end(), [&](const Edge& e) {
    return e.agent >= 0 && e.agent < g.num_agents() && e.resource >= 0 &&
           e.resource < g.num_resources() && g.HasEdge(e.agent, e.resource);
  });
}

Matching MaxMatching(const BipartiteGraph& g) {
  std::vector<int> order(g.num_agents());
  std::iota(order.begin(), order.end(), 0);
  return MaxMatchingInOrder(g, order);
}

Matching MaxMatchingInOrder(const BipartiteGraph& g,
                            std::span<const int> agent_order) {
  ++g_max_matching_calls;
  std::vector<char> seen(g.num_agents(), 0);
  bool permutation =
      agent_order.size() == static_cast<std::size_t>(g.num_agents());
  for (std::size_t i = 0; permutation && i < agent_order.size(); ++i) {
    const int a = agent_order[i];
    permutation = a >= 0 && a < g.num_agents() && !seen[a];
    if (permutation) seen[a] = 1;
  }
  if (!permutation) {
    throw IndexError("agent order is not a permutation of the agents");
  }
  return HopcroftKarp(g, agent_order).Run();
}

std::uint64_t MaxMatchingCallCount() { return g_max_matching_calls.load(); }

const char* DmLabelName(DmLabel label) {
  switch (label) {
    case DmLabel::kEven:
      return "even";
    case DmLabel::kOdd:
      return "odd";
    case DmLabel::kUnreachable:
      return "unreachable";
  }
  return "?";
}

std::size_t DmLabels::Count(DmLabel label) const {
  return std::count(agents.begin(), agents.end(), label) +
         std::count(resources.begin(), resources.end(), label);
}

DmLabels DmDecompose(const BipartiteGraph& g, const Matching& m) {
  if (!m.IsMatchingOf(g)) {
    throw MatchingError("matching uses a pair that is not an edge");
  }
  const int na = g.num_agents();
  const int nr = g.num_resources();
  std::vector<int> mate_agent(na, -1), mate_resource(nr, -1);
  for (const Edge& e : m.pairs()) {
    mate_agent[e.agent] = e.resource;
    mate_resource[e.resource] = e.agent;
  }
  const auto by_resource = g.ResourceAdjacency();

  DmLabels labels{std::vector<DmLabel>(na, DmLabel::kUnreachable),
                  std::vector<DmLabel>(nr, DmLabel::kUnreachable)};
  auto not_maximum = [] {
    return MatchingError("matching is not maximum (augmenting path found)");
  };
  // Each side is searched separately: from free agents, Even nodes are
  // agents and Odd nodes are resources; from free resources the roles swap.
  // A node reached with both parities witnesses an augmenting path.
  auto search = [&](bool from_agents) {
    auto& even = from_agents ? labels.agents : labels.resources;
    auto& odd = from_agents ? labels.resources : labels.agents;
    const auto& even_mate = from_agents ? mate_agent : mate_resource;
    const auto& odd_mate = from_agents ? mate_resource : mate_agent;
    const int n_even = from_agents ? na : nr;
    std::deque<int> queue;
    for (int u = 0; u < n_even; ++u) {
      if (even_mate[u] == -1) {
        even[u] = DmLabel::kEven;
        queue.push_back(u);
      }
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      std::span<const int> nbrs =
          from_agents ? g.Neighbors(u) : std::span<const int>(by_resource[u]);
      for (int v : nbrs) {
        if (v == even_mate[u]) continue;
        if (odd[v] == DmLabel::kEven) throw not_maximum();
        if (odd[v] == DmLabel::kOdd) continue;
        odd[v] = DmLabel::kOdd;
        int w = odd_mate[v];
        if (w == -1) throw not_maximum();
        if (even[w] == DmLabel::kOdd) throw not_maximum();
        if (even[w] == DmLabel::kUnreachable) {
          even[w] = DmLabel::kEven;
          queue.push_back(w);
        }
      }
    }
  };
  search(/*from_agents=*/true);
  search(/*from_agents=*/false);

  for (int a = 0; a < na; ++a) {
    if (labels.agents[a] != DmLabel::kEven) continue;
    for (int y : g.Neighbors(a)) {
      if (labels.resources[y] == DmLabel::kEven) throw not_maximum();
    }
  }
  return labels;
}

DmLabels DmDecompose(const BipartiteGraph& g) {
  return DmDecompose(g, MaxMatching(g));
}

BipartiteGraph AddAgentEdges(const BipartiteGraph& g, int agent,
                             std::span<const int> resources) {
  if (agent < 0 || agent >= g.num_agents()) {
    throw IndexError("agent index " + std::to_string(agent) +
                     " out of range");
  }
  for (int y : resources) {
    if (y < 0 || y >= g.num_resources()) {
      throw IndexError("resource index " + std::to_string(y) +
                       " out of range");
    }
  }
  BipartiteGraph out = g;
  if (resources.empty()) return out;
  std::vector<int> row(g.rows_[agent]->begin(), g.rows_[agent]->end());
  row.insert(row.end(), resources.begin(), resources.end());
  out.rows_[agent] = MakeRow(std::move(row), g.num_resources());
  return out;
}

}  // namespace match_advice
