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

// Budgeted relaxation solvers and the end-to-end advice pipeline.

#ifndef MATCH_ADVICE_SOLVERS_H_
#define MATCH_ADVICE_SOLVERS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "match_advice/advice.h"
#include "match_advice/prob.h"
#include "match_advice/scenario.h"

namespace match_advice {

// Probability that an agent is matched in a graph. Every binding is a pure
// function of (graph, agent): samplers carry a fixed seed, so repeated
// candidate evaluations share random numbers and comparisons are
// reproducible.
class ProbOracle {
 public:
  using Fn = std::function<ProbEstimate(const BipartiteGraph&, int)>;

  ProbOracle(std::string name, ProbMethod method, Fn fn)
      : name_(std::move(name)), method_(method), fn_(std::move(fn)) {}

  static ProbOracle Exact(std::uint64_t budget = kDefaultEnumerationBudget);
  static ProbOracle Sampling(std::uint64_t samples, std::uint64_t seed);
  static ProbOracle HkUno(std::uint64_t theta_hk, std::uint64_t theta_u,
                          std::uint64_t seed);
  // Evaluates a graph by which blocks of `bp` are joined to x_star in it.
  // The graph must join each block fully or not at all.
  static ProbOracle BlockFormula(BlockProbabilities bp, int x_star);

  ProbEstimate operator()(const BipartiteGraph& g, int agent) const {
    return fn_(g, agent);
  }
  const std::string& name() const { return name_; }
  ProbMethod method() const { return method_; }

 private:
  std::string name_;
  ProbMethod method_;
  Fn fn_;
};

struct Solution {
  RestrictionSet chosen;
  Cost cost;
  ProbEstimate probability;  // p(G_chosen)
  ProbEstimate baseline;     // p(G)
  double gain = 0.0;         // probability.value - baseline.value
  bool scenario1 = false;

  std::string solver;
  std::uint64_t oracle_calls = 0;
  // Greedy: 1-based iteration whose best candidate did not raise the
  // probability (budget spent there on without benefit).
  std::optional<int> first_zero_gain_iteration;
  std::optional<IncompatibilityType> type;
  std::string note;
};

// Greedy maximization for unit-cost restrictions: floor(beta) rounds (fewer
// if restrictions run out), each adding the restriction whose relaxation
// gives the highest probability; ties go to the lowest id. A round is taken
// even when no candidate helps. Expects gamma to be the Scenario-2 filtered
// set. Throws PreconditionError on non-unit costs, an empty restriction set,
// or beta < 1.
Solution GreedyRelax(const AdviceInstance& inst, Cost beta,
                     const ProbOracle& oracle);

// All non-negative integer alpha-tuples summing to beta, in lexicographic
// order; there are C(beta + alpha - 1, alpha - 1) of them. Throws
// PreconditionError for alpha == 0 or beta < 0.
std::vector<std::vector<std::int64_t>> AlphaPartitions(std::int64_t beta,
                                                       int alpha);

// Optimal search for threshold-like instances with integer costs: for each
// split of the budget over the attribute blocks, each block relaxes the
// longest top suffix it can afford (binary search over precomputed suffix
// sums), and the best union wins; ties keep the earliest split. Uses at most
// (number of splits + 1) oracle calls. Throws PreconditionError for
// non-threshold instances or non-integer costs or budget.
Solution ThresholdRelax(const AdviceInstance& inst, Cost beta,
                        const ProbOracle& oracle);

inline constexpr int kExhaustiveMaxRestrictions = 25;

// Every affordable subset, by increasing size then lexicographically, with
// cost pruning; ties keep the first (smallest, then lexicographically
// least). Candidates that unlock the same resources share one oracle call.
// Throws GuardError above kExhaustiveMaxRestrictions restrictions.
Solution ExhaustiveRelax(const AdviceInstance& inst, Cost beta,
                         const ProbOracle& oracle);

enum class SolverChoice { kAuto, kGreedy, kThreshold, kExhaustive };

std::optional<SolverChoice> ParseSolverChoice(const std::string& name);

struct AdviseConfig {
  SolverChoice solver = SolverChoice::kAuto;
  ProbOracle oracle = ProbOracle::Exact();
  bool min_cost_witness = false;
};

// Baseline, scenario detection, then a solver on the filtered pairs:
// greedy for single-restriction and single-choice types with unit costs,
// threshold search for threshold-like instances, exhaustive search for the
// rest while within its guard. Throws SolverError when no solver applies.
Solution Advise(const AdviceInstance& inst, Cost beta,
                const AdviseConfig& config = {});

}  // namespace match_advice

#endif  // MATCH_ADVICE_SOLVERS_H_
