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

// Enumeration and counting of all maximum matchings of a bipartite graph.

#ifndef MATCH_ADVICE_MATCHENUM_H_
#define MATCH_ADVICE_MATCHENUM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "match_advice/bigraph.h"

namespace match_advice {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

// Lazily enumerates every maximum matching of a graph exactly once.
//
// Starting from a seed maximum matching M, each step looks for an alternating
// cycle, or an even alternating path that starts at an unmatched node, in the
// current subproblem. Exchanging M along it gives a new maximum matching M'.
// An edge e in M \ M' then splits the subproblem in two: matchings that
// contain e (both endpoints of e are fixed and removed) and matchings that
// avoid e (e is deleted, M' is the known matching there). The two halves are
// disjoint, so no matching is produced twice. This is the plain variant of
// Uno's exchange enumeration, without the amortization speedups; the pending
// subproblems live on an explicit stack.
//
// Order: unmatched agents, then unmatched resources, are tried for a length-2
// even path in ascending index; alternating cycles are found by a DFS over
// matched agents in ascending index; the "contains e" half is explored first.
//
// Single consumer; not safe to share between threads mid-iteration.
class MaxMatchingEnumerator {
 public:
  // Seeds with MaxMatching(g).
  explicit MaxMatchingEnumerator(const BipartiteGraph& g);
  // Seeds with the given maximum matching. Throws MatchingError if it is not
  // a maximum matching of g.
  MaxMatchingEnumerator(const BipartiteGraph& g, const Matching& seed);

  // Next matching, or nullopt when all have been produced.
  std::optional<Matching> Next();

  std::uint64_t produced() const { return produced_; }

 private:
  struct Frame {
    std::vector<char> edge_alive;      // by edge id
    std::vector<char> vertex_removed;  // agents then resources
    std::vector<int> mate_agent;       // includes fixed pairs
  };

  bool Exchange(const Frame& frame, std::vector<int>& new_mate,
                int& split_edge) const;
  Matching ToMatching(const std::vector<int>& mate_agent) const;

  int num_agents_;
  int num_resources_;
  std::vector<int> edge_agent_;
  std::vector<int> edge_resource_;
  std::vector<int> agent_offset_;                  // CSR over edge ids
  std::vector<std::vector<int>> resource_edges_;  // edge ids per resource
  std::vector<Frame> stack_;
  std::optional<Matching> pending_seed_;
  std::uint64_t produced_ = 0;
};

// All maximum matchings of g (at most `cap` of them when given, cap >= 1).
// The empty graph yields the single empty matching.
std::vector<Matching> EnumerateMaxMatchings(
    const BipartiteGraph& g, std::optional<std::uint64_t> cap = std::nullopt);

struct MatchingCount {
  std::uint64_t total = 0;
  std::uint64_t containing = 0;  // maximum matchings that match the agent
};

// Exact count by enumeration. Throws EnumerationBudgetExceeded when g has
// more than `budget` maximum matchings.
MatchingCount CountMaxMatchingsContaining(
    const BipartiteGraph& g, int agent,
    std::uint64_t budget = kDefaultEnumerationBudget);

// Independent oracle: exhaustive search over all matchings, keeping those of
// maximum size, returned in sorted order. Requires
// num_agents + num_resources <= 20 (GuardError otherwise).
std::vector<Matching> BruteForceMaxMatchings(const BipartiteGraph& g);

}  // namespace match_advice

#endif  // MATCH_ADVICE_MATCHENUM_H_
