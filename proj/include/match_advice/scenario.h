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

#ifndef MATCH_ADVICE_SCENARIO_H_
#define MATCH_ADVICE_SCENARIO_H_

#include <optional>

#include "match_advice/advice.h"
#include "match_advice/bigraph.h"

namespace match_advice {

// Scenario 1: some affordable relaxation grows the maximum matching, and the
// special agent is then matched by every maximum matching. Scenario 2: no
// affordable relaxation changes the matching size; `gamma_prime` holds the
// affordable pairs, the only ones a solver needs to look at.
struct ScenarioResult {
  bool scenario1 = false;
  // Scenario 1 only.
  RestrictionSet witness;
  int witness_resource = -1;
  // Scenario 2 only.
  IncompatibilitySet gamma_prime;

  std::size_t matching_size = 0;
  DmLabel x_star_label = DmLabel::kEven;
};

struct ScenarioOptions {
  // Scan all of gamma and return the cheapest witness (first on ties)
  // instead of the first one found.
  bool min_cost_witness = false;
};

// One maximum matching and its DM decomposition, then a single pass over
// gamma: a pair (y, R') with cost(R') <= beta and y Even is a Scenario-1
// witness, provided x* itself is Even. If x* is not Even it is matched in
// every maximum matching already and no edge at x* can grow the matching,
// so the result is Scenario 2 with every affordable pair.
// Throws ValidationError on an invalid instance.
ScenarioResult DetectScenario(const AdviceInstance& inst, Cost beta,
                              const ScenarioOptions& options = {});

}  // namespace match_advice

#endif  // MATCH_ADVICE_SCENARIO_H_
