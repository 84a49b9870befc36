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
#include <string>
#include <utility>

#include "match_advice/errors.h"

namespace match_advice {

MaxMatchingEnumerator::MaxMatchingEnumerator(const BipartiteGraph& g)
    : MaxMatchingEnumerator(g, MaxMatching(g)) {}

MaxMatchingEnumerator::MaxMatchingEnumerator(const BipartiteGraph& g,
                                             const Matching& seed)
    : num_agents_(g.num_agents()),
      num_resources_(g.num_resources()),
      agent_offset_(g.num_agents() + 1, 0),
      resource_edges_(g.num_resources()) {
  if (!seed.IsMatchingOf(g)) {
    throw MatchingError("seed is not a matching of the graph");
  }
  for (int a = 0; a < num_agents_; ++a) {
    for (int y : g.Neighbors(a)) {
      resource_edges_[y].push_back(static_cast<int>(edge_agent_.size()));
      edge_agent_.push_back(a);
      edge_resource_.push_back(y);
    }
    agent_offset_[a + 1] = static_cast<int>(edge_agent_.size());
  }
  if (seed.size() != MaxMatching(g).size()) {
    throw MatchingError("seed matching is not maximum");
  }
  Frame root{std::vector<char>(edge_agent_.size(), 1),
             std::vector<char>(num_agents_ + num_resources_, 0),
             std::vector<int>(num_agents_, -1)};
  for (const Edge& e : seed.pairs()) root.mate_agent[e.agent] = e.resource;
  stack_.push_back(std::move(root));
  pending_seed_ = seed;
}

std::optional<Matching> MaxMatchingEnumerator::Next() {
  if (pending_seed_) {
    std::optional<Matching> out = std::move(pending_seed_);
    pending_seed_.reset();
    ++produced_;
    return out;
  }
  while (!stack_.empty()) {
    Frame frame = std::move(stack_.back());
    stack_.pop_back();
    std::vector<int> new_mate;
    int split = -1;
    if (!Exchange(frame, new_mate, split)) continue;

    Frame avoid{frame.edge_alive, frame.vertex_removed, new_mate};
    avoid.edge_alive[split] = 0;
    Frame contain = std::move(frame);
    contain.vertex_removed[edge_agent_[split]] = 1;
    contain.vertex_removed[num_agents_ + edge_resource_[split]] = 1;
    stack_.push_back(std::move(avoid));
    stack_.push_back(std::move(contain));
    ++produced_;
    return ToMatching(new_mate);
  }
  return std::nullopt;
}

bool MaxMatchingEnumerator::Exchange(const Frame& frame,
                                     std::vector<int>& new_mate,
                                     int& split_edge) const {
  const auto& removed = frame.vertex_removed;
  const auto& mate = frame.mate_agent;
  auto agent_live = [&](int a) { return !removed[a]; };
  auto resource_live = [&](int y) { return !removed[num_agents_ + y]; };
  auto usable = [&](int id) {
    return frame.edge_alive[id] && agent_live(edge_agent_[id]) &&
           resource_live(edge_resource_[id]);
  };
  std::vector<int> mate_resource(num_resources_, -1);
  for (int a = 0; a < num_agents_; ++a) {
    if (mate[a] != -1) mate_resource[mate[a]] = a;
  }
  auto find_edge = [&](int a, int y) {
    for (int id = agent_offset_[a]; id < agent_offset_[a + 1]; ++id) {
      if (edge_resource_[id] == y) return id;
    }
    throw MatchingError("matched pair is not an edge");
  };

  // Even path of length 2 from an unmatched agent: a - y = b.
  for (int a = 0; a < num_agents_; ++a) {
    if (!agent_live(a) || mate[a] != -1) continue;
    for (int id = agent_offset_[a]; id < agent_offset_[a + 1]; ++id) {
      if (!usable(id)) continue;
      const int y = edge_resource_[id];
      const int b = mate_resource[y];
      if (b == -1) throw MatchingError("matching is not maximum");
      new_mate = mate;
      new_mate[a] = y;
      new_mate[b] = -1;
      split_edge = find_edge(b, y);
      return true;
    }
  }
  // Even path of length 2 from an unmatched resource: y - a = z.
  for (int y = 0; y < num_resources_; ++y) {
    if (!resource_live(y) || mate_resource[y] != -1) continue;
    for (int id : resource_edges_[y]) {
      if (!usable(id)) continue;
      const int a = edge_agent_[id];
      if (mate[a] == -1) throw MatchingError("matching is not maximum");
      split_edge = find_edge(a, mate[a]);
      new_mate = mate;
      new_mate[a] = y;
      return true;
    }
  }
  // Alternating cycle: a -> b when a has a non-matching edge to b's resource.
  // Every live non-matching edge now joins two matched nodes.
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> color(num_agents_, kWhite);
  std::vector<std::pair<int, int>> path;  // (agent, next edge id to scan)
  for (int start = 0; start < num_agents_; ++start) {
    if (!agent_live(start) || mate[start] == -1 || color[start] != kWhite) {
      continue;
    }
    path.assign(1, {start, agent_offset_[start]});
    color[start] = kGrey;
    while (!path.empty()) {
      auto& [a, next] = path.back();
      if (next == agent_offset_[a + 1]) {
        color[a] = kBlack;
        path.pop_back();
        continue;
      }
      const int id = next++;
      if (!usable(id) || edge_resource_[id] == mate[a]) continue;
      const int b = mate_resource[edge_resource_[id]];
      if (color[b] == kBlack) continue;
      if (color[b] == kWhite) {
        color[b] = kGrey;
        path.push_back({b, agent_offset_[b]});
        continue;
      }
      // Grey: the path from b to a plus a -> b closes a cycle.
      std::size_t from = 0;
      while (path[from].first != b) ++from;
      new_mate = mate;
      for (std::size_t i = from; i < path.size(); ++i) {
        const int u = path[i].first;
        const int v = i + 1 < path.size() ? path[i + 1].first : b;
        new_mate[u] = mate[v];
      }
      split_edge = find_edge(b, mate[b]);
      return true;
    }
  }
  return false;
}

Matching MaxMatchingEnumerator::ToMatching(
    const std::vector<int>& mate_agent) const {
  std::vector<Edge> pairs;
  for (int a = 0; a < num_agents_; ++a) {
    if (mate_agent[a] != -1) pairs.push_back({a, mate_agent[a]});
  }
  return Matching(std::move(pairs));
}

std::vector<Matching> EnumerateMaxMatchings(const BipartiteGraph& g,
                                            std::optional<std::uint64_t> cap) {
  if (cap && *cap < 1) throw PreconditionError("enumeration cap must be >= 1");
  std::vector<Matching> out;
  MaxMatchingEnumerator it(g);
  while (!cap || out.size() < *cap) {
    auto m = it.Next();
    if (!m) break;
    out.push_back(std::move(*m));
  }
  return out;
}

MatchingCount CountMaxMatchingsContaining(const BipartiteGraph& g, int agent,
                                          std::uint64_t budget) {
  if (agent < 0 || agent >= g.num_agents()) {
    throw IndexError("agent index " + std::to_string(agent) +
                     " out of range");
  }
  MatchingCount count;
  MaxMatchingEnumerator it(g);
  while (auto m = it.Next()) {
    if (++count.total > budget) {
      throw EnumerationBudgetExceeded(
          "enumeration budget exceeded: more than " + std::to_string(budget) +
          " maximum matchings");
    }
    if (m->MatchesAgent(agent)) ++count.containing;
  }
  return count;
}

namespace {

class BruteForce {
 public:
  explicit BruteForce(const BipartiteGraph& g)
      : g_(g), used_(g.num_resources(), 0) {}

  std::vector<Matching> Run() {
    Recurse(0);
    std::vector<Matching> out;
    out.reserve(found_.size());
    for (auto& pairs : found_) out.emplace_back(std::move(pairs));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void Recurse(int agent) {
    const int remaining = g_.num_agents() - agent;
    if (static_cast<int>(current_.size()) + remaining < best_) return;
    if (agent == g_.num_agents()) {
      const int size = static_cast<int>(current_.size());
      if (size > best_) {
        best_ = size;
        found_.clear();
      }
      found_.push_back(current_);
      return;
    }
    Recurse(agent + 1);  // agent left unmatched
    for (int y : g_.Neighbors(agent)) {
      if (used_[y]) continue;
      used_[y] = 1;
      current_.push_back({agent, y});
      Recurse(agent + 1);
      current_.pop_back();
      used_[y] = 0;
    }
  }

  const BipartiteGraph& g_;
  std::vector<char> used_;
  std::vector<Edge> current_;
  std::vector<std::vector<Edge>> found_;
  int best_ = 0;
};

}  // namespace

std::vector<Matching> BruteForceMaxMatchings(const BipartiteGraph& g) {
  if (g.num_agents() + g.num_resources() > 20) {
    throw GuardError("brute force limited to 20 nodes, graph has " +
                     std::to_string(g.num_agents() + g.num_resources()));
  }
  return BruteForce(g).Run();
}

}  // namespace match_advice
