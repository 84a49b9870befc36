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


// Experiment harness: synthetic budget/restriction sweeps and threshold
// sweeps over CSV datasets, written as deterministic CSV tables.

#ifndef MATCH_ADVICE_EXPERIMENT_H_
#define MATCH_ADVICE_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "match_advice/solvers.h"

namespace match_advice {

struct OracleConfig {
  std::string method = "exact";  // exact | sample | hkuno
  std::uint64_t samples = 1000;
  std::uint64_t theta_hk = 100;
  std::uint64_t theta_u = 9;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

// Throws PreconditionError on an unknown method.
ProbOracle MakeOracle(const OracleConfig& config, std::uint64_t seed);

enum class Protocol { kSyntheticMcsr, kSyntheticScmr, kThreshold };

std::optional<Protocol> ParseProtocol(std::string_view name);
const char* ProtocolName(Protocol protocol);

struct ExperimentConfig {
  Protocol protocol = Protocol::kSyntheticMcsr;
  std::uint64_t seed = 1;
  int replicates = 1;
  std::vector<std::int64_t> budgets = {1, 2, 3, 4, 5};
  std::vector<std::string> solvers;  // default: per protocol
  OracleConfig oracle;

  // Synthetic protocols.
  int instances = 20;
  int agents = 10;
  int resources = 5;
  double edge_prob = 0.2;
  std::vector<int> restrictions = {5};
  std::vector<int> max_per_resource = {2};

  // Threshold protocol: a stand-in preset, or a pair of CSV files.
  std::string dataset = "desk";
  std::optional<std::string> resources_csv;
  std::optional<std::string> agents_csv;
  std::vector<std::string> schemes = {"cost1", "cost2"};
  std::int64_t step = 10;
  int agent_limit = 0;  // first N agents; 0 = all
};

// JSON config. Unknown keys, wrong types and bad values throw ParseError.
// A "protocol" key, when present, must name the protocol in `protocol`.
ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       Protocol protocol);

struct ExperimentTables {
  std::string runs;       // one row per (instance, parameters, solver)
  std::string aggregate;  // mean and 95% CI per parameter cell
  // Wall-clock times; the only table that differs between identical runs.
  std::string runtime;
  // Threshold protocol only: wall time against budget.
  std::string runtime_by_budget;
};

ExperimentTables RunExperiment(const ExperimentConfig& config);

// Writes runs.csv, aggregate.csv, runtime.csv and, when present,
// runtime_by_budget.csv into `dir` (created if needed).
void WriteExperimentTables(const ExperimentTables& tables,
                           const std::filesystem::path& dir);

// Shortest decimal text that reads back as the same double.
std::string FormatDouble(double value);

}  // namespace match_advice

#endif  // MATCH_ADVICE_EXPERIMENT_H_
