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

#include "match_advice/solvers.h"

#include <algorithm>
#include <map>
#include <string>

#include "match_advice/errors.h"

namespace match_advice {
namespace {

Solution MakeSolution(const AdviceInstance& inst, RestrictionSet chosen,
                      ProbEstimate probability, ProbEstimate baseline,
                      std::string solver, std::uint64_t calls) {
  Solution s;
  s.cost = RelaxationCost(inst, chosen);
  s.chosen = std::move(chosen);
  s.gain = probability.value - baseline.value;
  s.probability = std::move(probability);
  s.baseline = std::move(baseline);
  s.solver = std::move(solver);
  s.oracle_calls = calls;
  return s;
}

RestrictionSet With(const RestrictionSet& a, int r) {
  RestrictionSet out = a;
  out.insert(std::upper_bound(out.begin(), out.end(), r), r);
  return out;
}

}  // namespace

ProbOracle ProbOracle::Exact(std::uint64_t budget) {
  return ProbOracle("exact", ProbMethod::kExactEnumeration,
                    [budget](const BipartiteGraph& g, int agent) {
                      return ExactProbability(g, agent, budget);
                    });
}

ProbOracle ProbOracle::Sampling(std::uint64_t samples, std::uint64_t seed) {
  return ProbOracle("sample", ProbMethod::kPermutationSampling,
                    [samples, seed](const BipartiteGraph& g, int agent) {
                      return EstimateProbability(g, agent, samples, seed);
                    });
}

ProbOracle ProbOracle::HkUno(std::uint64_t theta_hk, std::uint64_t theta_u,
                             std::uint64_t seed) {
  return ProbOracle(
      "hkuno", ProbMethod::kHkUno,
      [theta_hk, theta_u, seed](const BipartiteGraph& g, int agent) {
        return HkUnoEstimate(g, agent, theta_hk, theta_u, seed);
      });
}

ProbOracle ProbOracle::BlockFormula(BlockProbabilities bp, int x_star) {
  return ProbOracle(
      "block", ProbMethod::kBlockFormula,
      [bp = std::move(bp), x_star](const BipartiteGraph& g, int agent) {
        if (agent != x_star) {
          throw PreconditionError(
              "block oracle was precomputed for another agent");
        }
        std::vector<int> active;
        for (std::size_t l = 0; l < bp.resources.size(); ++l) {
          std::size_t joined = 0;
          for (int y : bp.resources[l]) joined += g.HasEdge(agent, y) ? 1 : 0;
          if (joined == bp.resources[l].size()) {
            active.push_back(static_cast<int>(l));
          } else if (joined != 0) {
            throw PreconditionError("block " + std::to_string(l) +
                                    " is only partly compatible");
          }
        }
        return BlockProbability(bp, active);
      });
}

Solution GreedyRelax(const AdviceInstance& inst, Cost beta,
                     const ProbOracle& oracle) {
  if (!HasUnitCosts(inst)) {
    throw PreconditionError(
        "greedy needs unit restriction costs; use the threshold or "
        "exhaustive solver");
  }
  if (inst.restrictions.empty()) {
    throw PreconditionError("greedy needs at least one restriction");
  }
  if (beta < Cost::FromUnits(1)) {
    throw PreconditionError("greedy needs a budget of at least 1");
  }
  const int n = static_cast<int>(inst.restrictions.size());
  const std::int64_t rounds = std::min<std::int64_t>(beta.units(), n);

  std::uint64_t calls = 1;
  const ProbEstimate baseline = oracle(inst.graph, inst.x_star);
  ProbEstimate current = baseline;
  RestrictionSet chosen;
  std::optional<int> first_zero;
  for (std::int64_t round = 1; round <= rounds; ++round) {
    int best_r = -1;
    ProbEstimate best;
    for (int r = 0; r < n; ++r) {
      if (std::binary_search(chosen.begin(), chosen.end(), r)) continue;
      ProbEstimate p =
          oracle(ApplyRelaxation(inst, With(chosen, r)), inst.x_star);
      ++calls;
      if (best_r == -1 || CompareProbability(p, best) > 0) {
        best_r = r;
        best = std::move(p);
      }
    }
    if (!first_zero && CompareProbability(best, current) <= 0) {
      first_zero = static_cast<int>(round);
    }
    chosen = With(chosen, best_r);
    current = std::move(best);
  }
  Solution s = MakeSolution(inst, std::move(chosen), std::move(current),
                            baseline, "greedy", calls);
  s.first_zero_gain_iteration = first_zero;
  return s;
}

std::vector<std::vector<std::int64_t>> AlphaPartitions(std::int64_t beta,
                                                       int alpha) {
  if (alpha < 1) throw PreconditionError("alpha must be >= 1");
  if (beta < 0) throw PreconditionError("beta must be >= 0");
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> current(alpha, 0);
  // Odometer over the first alpha-1 parts; the last takes the remainder.
  std::function<void(int, std::int64_t)> fill = [&](int i,
                                                    std::int64_t left) {
    if (i == alpha - 1) {
      current[i] = left;
      out.push_back(current);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      current[i] = v;
      fill(i + 1, left - v);
    }
  };
  fill(0, beta);
  return out;
}

Solution ThresholdRelax(const AdviceInstance& inst, Cost beta,
                        const ProbOracle& oracle) {
  if (Classify(inst) != IncompatibilityType::kThresholdLike) {
    throw PreconditionError("threshold search needs a threshold-like instance");
  }
  if (!beta.IsInteger() || beta < Cost()) {
    throw PreconditionError("threshold search needs a non-negative integer "
                            "budget");
  }
  // block -> ids ordered by rank 1..t, and suffix sums S[s] = sum_{s'>=s}.
  std::map<int, std::vector<int>> by_block;
  for (const Restriction& r : inst.restrictions) {
    if (!r.cost.IsInteger()) {
      throw PreconditionError("threshold search needs integer costs");
    }
    auto& ids = by_block[*r.block];
    if (static_cast<int>(ids.size()) < *r.rank) ids.resize(*r.rank, -1);
    ids[*r.rank - 1] = r.id;
  }
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<std::int64_t>> suffix;
  for (auto& [block, ids] : by_block) {
    std::vector<std::int64_t> s(ids.size() + 1, 0);
    for (std::size_t i = ids.size(); i-- > 0;) {
      s[i] = s[i + 1] + inst.restrictions[ids[i]].cost.units();
    }
    blocks.push_back(ids);
    suffix.push_back(std::move(s));
  }
  const int alpha = static_cast<int>(blocks.size());

  std::uint64_t calls = 1;
  const ProbEstimate baseline = oracle(inst.graph, inst.x_star);
  ProbEstimate best = baseline;
  RestrictionSet best_set;
  if (alpha == 0) {
    return MakeSolution(inst, {}, best, baseline, "threshold", calls);
  }
  for (const auto& split : AlphaPartitions(beta.units(), alpha)) {
    std::vector<int> relaxed;
    for (int l = 0; l < alpha; ++l) {
      const auto& s = suffix[l];
      const std::size_t t = blocks[l].size();
      // Least position i in [0, t) with s[i] <= budget; s is decreasing.
      auto it = std::lower_bound(
          s.begin(), s.begin() + t, split[l],
          [](std::int64_t sum, std::int64_t budget) { return sum > budget; });
      for (auto i = static_cast<std::size_t>(it - s.begin()); i < t; ++i) {
        relaxed.push_back(blocks[l][i]);
      }
    }
    RestrictionSet candidate = MakeRestrictionSet(std::move(relaxed));
    ProbEstimate p = oracle(ApplyRelaxation(inst, candidate), inst.x_star);
    ++calls;
    if (CompareProbability(p, best) > 0) {
      best = std::move(p);
      best_set = std::move(candidate);
    }
  }
  return MakeSolution(inst, std::move(best_set), std::move(best), baseline,
                      "threshold", calls);
}

Solution ExhaustiveRelax(const AdviceInstance& inst, Cost beta,
                         const ProbOracle& oracle) {
  const int n = static_cast<int>(inst.restrictions.size());
  if (n > kExhaustiveMaxRestrictions) {
    throw GuardError("exhaustive search limited to " +
                     std::to_string(kExhaustiveMaxRestrictions) +
                     " restrictions, instance has " + std::to_string(n));
  }
  std::map<std::vector<int>, ProbEstimate> memo;
  auto evaluate = [&](const RestrictionSet& a) {
    std::vector<int> unlocked = UnlockedResources(inst, a);
    auto it = memo.find(unlocked);
    if (it == memo.end()) {
      it = memo.emplace(unlocked,
                        oracle(AddAgentEdges(inst.graph, inst.x_star,
                                             unlocked),
                               inst.x_star))
               .first;
    }
    return it->second;
  };

  const ProbEstimate baseline = evaluate({});
  ProbEstimate best = baseline;
  RestrictionSet best_set;
  RestrictionSet current;
  // Combinations of size k in lexicographic order with cost pruning.
  std::function<void(int, int, Cost)> extend = [&](int next, int k,
                                                   Cost spent) {
    if (static_cast<int>(current.size()) == k) {
      ProbEstimate p = evaluate(current);
      if (CompareProbability(p, best) > 0) {
        best = std::move(p);
        best_set = current;
      }
      return;
    }
    for (int r = next; r < n; ++r) {
      const Cost c = spent + inst.restrictions[r].cost;
      if (c > beta) continue;
      current.push_back(r);
      extend(r + 1, k, c);
      current.pop_back();
    }
  };
  for (int k = 1; k <= n; ++k) extend(0, k, Cost());
  return MakeSolution(inst, std::move(best_set), std::move(best), baseline,
                      "exhaustive", memo.size());
}

std::optional<SolverChoice> ParseSolverChoice(const std::string& name) {
  if (name == "auto") return SolverChoice::kAuto;
  if (name == "greedy") return SolverChoice::kGreedy;
  if (name == "threshold") return SolverChoice::kThreshold;
  if (name == "exhaustive") return SolverChoice::kExhaustive;
  return std::nullopt;
}

Solution Advise(const AdviceInstance& inst, Cost beta,
                const AdviseConfig& config) {
  const ScenarioResult scenario =
      DetectScenario(inst, beta, {config.min_cost_witness});
  const ProbEstimate baseline = config.oracle(inst.graph, inst.x_star);
  const IncompatibilityType type =
      inst.type_hint.value_or(Classify(inst));

  if (scenario.scenario1) {
    // Every maximum matching of the relaxed graph matches x*, so any
    // oracle returns exactly 1 there.
    ProbEstimate one{1.0, 0, config.oracle.method(), Rational(1, 1)};
    Solution s = MakeSolution(inst, scenario.witness, one, baseline,
                              "scenario1", 1);
    s.scenario1 = true;
    s.type = type;
    return s;
  }

  const AdviceInstance filtered = WithGamma(inst, scenario.gamma_prime);
  std::optional<Cost> cheapest;
  for (const Restriction& r : inst.restrictions) {
    if (!cheapest || r.cost < *cheapest) cheapest = r.cost;
  }
  if (!cheapest || beta < *cheapest) {
    Solution s = MakeSolution(inst, {}, baseline, baseline, "none", 1);
    s.type = type;
    s.note = "budget below the cheapest restriction";
    return s;
  }

  const bool within_guard =
      static_cast<int>(inst.restrictions.size()) <= kExhaustiveMaxRestrictions;
  SolverChoice choice = config.solver;
  if (choice == SolverChoice::kAuto) {
    switch (type) {
      case IncompatibilityType::kThresholdLike: {
        bool integral = beta.IsInteger();
        for (const Restriction& r : inst.restrictions) {
          integral = integral && r.cost.IsInteger();
        }
        choice = integral ? SolverChoice::kThreshold
                 : within_guard ? SolverChoice::kExhaustive
                                : SolverChoice::kAuto;
        break;
      }
      case IncompatibilityType::kSingleChoiceSingleRestriction:
      case IncompatibilityType::kMultiChoiceSingleRestriction:
      case IncompatibilityType::kSingleChoiceMultiRestriction:
        choice = HasUnitCosts(inst) ? SolverChoice::kGreedy
                 : within_guard     ? SolverChoice::kExhaustive
                                    : SolverChoice::kAuto;
        break;
      case IncompatibilityType::kMultiChoiceMultiRestriction:
        choice = within_guard ? SolverChoice::kExhaustive : SolverChoice::kAuto;
        break;
    }
    if (choice == SolverChoice::kAuto) {
      throw SolverError(std::string("no solver available for a ") +
                        IncompatibilityTypeName(type) + " instance with " +
                        std::to_string(inst.restrictions.size()) +
                        " restrictions");
    }
  }

  Solution s;
  switch (choice) {
    case SolverChoice::kGreedy:
      s = GreedyRelax(filtered, beta, config.oracle);
      break;
    case SolverChoice::kThreshold:
      s = ThresholdRelax(filtered, beta, config.oracle);
      break;
    case SolverChoice::kExhaustive:
    case SolverChoice::kAuto:
      s = ExhaustiveRelax(filtered, beta, config.oracle);
      break;
  }
  s.type = type;
  if (type == IncompatibilityType::kSingleChoiceMultiRestriction &&
      s.solver == "greedy") {
    s.note =
        "single-choice multi-restriction: greedy is only guaranteed up to the "
        "submodularity ratio of the instance";
  }
  return s;
}

}  // namespace match_advice
