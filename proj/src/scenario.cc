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

#include "match_advice/scenario.h"

#include "match_advice/errors.h"

namespace match_advice {

ScenarioResult DetectScenario(const AdviceInstance& inst, Cost beta,
                              const ScenarioOptions& options) {
  if (ValidationReport report = ValidateInstance(inst); !report.ok()) {
    throw ValidationError(std::move(report.violations));
  }
  if (beta < Cost()) throw PreconditionError("budget must be non-negative");

  const Matching m = MaxMatching(inst.graph);
  const DmLabels labels = DmDecompose(inst.graph, m);

  ScenarioResult result;
  result.matching_size = m.size();
  result.x_star_label = labels.agents[inst.x_star];
  const bool x_star_even = result.x_star_label == DmLabel::kEven;

  std::optional<Cost> best_cost;
  for (const auto& p : inst.gamma) {
    const Cost c = RelaxationCost(inst, p.requires_set);
    if (c > beta) continue;
    if (x_star_even && labels.resources[p.resource] == DmLabel::kEven) {
      if (!options.min_cost_witness) {
        result.scenario1 = true;
        result.witness = p.requires_set;
        result.witness_resource = p.resource;
        result.gamma_prime.clear();
        return result;
      }
      if (!best_cost || c < *best_cost) {
        best_cost = c;
        result.scenario1 = true;
        result.witness = p.requires_set;
        result.witness_resource = p.resource;
      }
      continue;
    }
    result.gamma_prime.push_back(p);
  }
  if (result.scenario1) result.gamma_prime.clear();
  return result;
}

}  // namespace match_advice
