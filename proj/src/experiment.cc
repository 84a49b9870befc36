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


#include "match_advice/experiment.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "match_advice/data.h"
#include "match_advice/errors.h"
#include "match_advice/parallel.h"
#include "match_advice/random.h"

namespace match_advice {

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

ProbOracle MakeOracle(const OracleConfig& config, std::uint64_t seed) {
  if (config.method == "exact") return ProbOracle::Exact(config.budget);
  if (config.method == "sample") {
    return ProbOracle::Sampling(config.samples, seed);
  }
  if (config.method == "hkuno") {
    return ProbOracle::HkUno(config.theta_hk, config.theta_u, seed);
  }
  throw PreconditionError("unknown oracle method '" + config.method + "'");
}

std::optional<Protocol> ParseProtocol(std::string_view name) {
  if (name == "synthetic-mcsr") return Protocol::kSyntheticMcsr;
  if (name == "synthetic-scmr") return Protocol::kSyntheticScmr;
  if (name == "threshold") return Protocol::kThreshold;
  return std::nullopt;
}

const char* ProtocolName(Protocol protocol) {
  switch (protocol) {
    case Protocol::kSyntheticMcsr:
      return "synthetic-mcsr";
    case Protocol::kSyntheticScmr:
      return "synthetic-scmr";
    case Protocol::kThreshold:
      return "threshold";
  }
  return "?";
}

namespace {

using nlohmann::json;

[[noreturn]] void ConfigFail(const std::string& key, const std::string& what) {
  throw ParseError("config key '" + key + "': " + what, 0);
}

template <typename T>
T Get(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    ConfigFail(key, "wrong type");
  }
}

std::int64_t GetInt(const json& v, const std::string& key, std::int64_t lo) {
  if (!v.is_number_integer()) ConfigFail(key, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo) ConfigFail(key, "must be >= " + std::to_string(lo));
  return x;
}

template <typename T>
std::vector<T> GetIntList(const json& v, const std::string& key,
                          std::int64_t lo) {
  if (!v.is_array()) ConfigFail(key, "expected an array");
  std::vector<T> out;
  for (const json& x : v) out.push_back(static_cast<T>(GetInt(x, key, lo)));
  return out;
}

std::vector<std::string> GetStringList(const json& v, const std::string& key) {
  if (!v.is_array()) ConfigFail(key, "expected an array");
  std::vector<std::string> out;
  for (const json& x : v) {
    if (!x.is_string()) ConfigFail(key, "expected strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       Protocol protocol) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed config JSON at byte " +
                         std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object", 0);
  ExperimentConfig c;
  c.protocol = protocol;
  for (const auto& [key, v] : j.items()) {
    if (key == "protocol") {
      const auto p = ParseProtocol(Get<std::string>(v, key));
      if (p != protocol) {
        ConfigFail(key, std::string("config is for another protocol, expected ") +
                            ProtocolName(protocol));
      }
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) ConfigFail(key, "expected an unsigned integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "replicates") {
      c.replicates = static_cast<int>(GetInt(v, key, 1));
    } else if (key == "budgets") {
      c.budgets = GetIntList<std::int64_t>(v, key, 0);
    } else if (key == "solvers") {
      c.solvers = GetStringList(v, key);
      for (const auto& s : c.solvers) {
        if (!ParseSolverChoice(s)) ConfigFail(key, "unknown solver '" + s + "'");
      }
    } else if (key == "oracle") {
      if (!v.is_object()) ConfigFail(key, "expected an object");
      for (const auto& [ok, ov] : v.items()) {
        const std::string name = "oracle." + ok;
        if (ok == "method") {
          c.oracle.method = Get<std::string>(ov, name);
          if (c.oracle.method != "exact" && c.oracle.method != "sample" &&
              c.oracle.method != "hkuno") {
            ConfigFail(name, "unknown method '" + c.oracle.method + "'");
          }
        } else if (ok == "samples") {
          c.oracle.samples = GetInt(ov, name, 1);
        } else if (ok == "theta_hk") {
          c.oracle.theta_hk = GetInt(ov, name, 1);
        } else if (ok == "theta_u") {
          c.oracle.theta_u = GetInt(ov, name, 0);
        } else if (ok == "budget") {
          c.oracle.budget = GetInt(ov, name, 1);
        } else {
          ConfigFail(name, "unknown key");
        }
      }
    } else if (key == "instances") {
      c.instances = static_cast<int>(GetInt(v, key, 0));
    } else if (key == "agents") {
      c.agents = static_cast<int>(GetInt(v, key, 1));
    } else if (key == "resources") {
      c.resources = static_cast<int>(GetInt(v, key, 1));
    } else if (key == "edge_prob") {
      if (!v.is_number()) ConfigFail(key, "expected a number");
      c.edge_prob = v.get<double>();
      if (!(c.edge_prob >= 0.0 && c.edge_prob <= 1.0)) {
        ConfigFail(key, "must be in [0, 1]");
      }
    } else if (key == "restrictions") {
      c.restrictions = GetIntList<int>(v, key, 1);
    } else if (key == "max_per_resource") {
      c.max_per_resource = GetIntList<int>(v, key, 1);
    } else if (key == "dataset") {
      c.dataset = Get<std::string>(v, key);
      const auto presets = ThresholdStandinPresets();
      if (std::find(presets.begin(), presets.end(), c.dataset) ==
          presets.end()) {
        ConfigFail(key, "unknown stand-in preset '" + c.dataset + "'");
      }
    } else if (key == "resources_csv") {
      c.resources_csv = Get<std::string>(v, key);
    } else if (key == "agents_csv") {
      c.agents_csv = Get<std::string>(v, key);
    } else if (key == "schemes") {
      c.schemes = GetStringList(v, key);
      for (const auto& s : c.schemes) {
        if (!ParseCostScheme(s)) ConfigFail(key, "unknown scheme '" + s + "'");
      }
    } else if (key == "step") {
      c.step = GetInt(v, key, 1);
    } else if (key == "agent_limit") {
      c.agent_limit = static_cast<int>(GetInt(v, key, 0));
    } else {
      ConfigFail(key, "unknown key");
    }
  }
  if (c.resources_csv.has_value() != c.agents_csv.has_value()) {
    ConfigFail("resources_csv", "resources_csv and agents_csv go together");
  }
  return c;
}

namespace {

struct Run {
  std::vector<std::string> key;  // protocol-specific key columns
  std::string solver;
  bool scenario1 = false;
  double p_before = 0.0;
  double p_after = 0.0;
  double gain = 0.0;
  Cost cost;
  std::uint64_t oracle_calls = 0;
  std::string chosen;
  double wall_ms = 0.0;
  std::string bin;  // threshold only
};

std::string Join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string ChosenNames(const AdviceInstance& inst,
                        const RestrictionSet& chosen) {
  std::vector<std::string> names;
  for (int r : chosen) {
    const std::string& name = inst.restrictions[r].name;
    names.push_back(name.empty() ? "r" + std::to_string(r) : name);
  }
  return Join(names, ';');
}

Run Execute(const AdviceInstance& inst, std::int64_t budget,
            const std::string& solver, const ProbOracle& oracle) {
  AdviseConfig config{*ParseSolverChoice(solver), oracle, false};
  const auto start = std::chrono::steady_clock::now();
  const Solution s = Advise(inst, Cost::FromUnits(budget), config);
  const auto stop = std::chrono::steady_clock::now();
  Run run;
  run.solver = solver;
  run.scenario1 = s.scenario1;
  run.p_before = s.baseline.value;
  run.p_after = s.probability.value;
  run.gain = s.gain;
  run.cost = s.cost;
  run.oracle_calls = s.oracle_calls;
  run.chosen = ChosenNames(inst, s.chosen);
  run.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return run;
}

std::string Bin(double p) {
  if (p < 1.0 / 3.0) return "low";
  if (p < 2.0 / 3.0) return "mid";
  return "high";
}

struct Stats {
  double mean = 0.0;
  double ci95 = 0.0;
};

Stats Summarize(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    s.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
  }
  return s;
}

ExperimentTables Tabulate(const std::vector<std::string>& key_columns,
                          const std::vector<std::size_t>& group_columns,
                          bool with_bin, const std::vector<Run>& runs) {
  std::ostringstream out, agg, time;
  const std::string keys = Join(key_columns, ',');
  out << keys << (with_bin ? ",p0_bin" : "")
      << ",solver,scenario,p_before,p_after,gain,cost,oracle_calls,chosen\n";
  time << keys << ",solver,wall_ms\n";
  std::vector<std::string> group_names;
  for (std::size_t c : group_columns) group_names.push_back(key_columns[c]);
  if (with_bin) group_names.push_back("p0_bin");
  group_names.push_back("solver");
  agg << Join(group_names, ',')
      << ",runs,mean_p_before,mean_p_after,ci95_p_after,mean_gain,ci95_gain,"
         "mean_cost\n";

  struct Cell {
    std::vector<double> before, after, gain, cost;
  };
  std::map<std::vector<std::string>, Cell> cells;
  // Numeric-aware ordering: keys are compared as numbers when both parse.
  auto less = [](const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i] == b[i]) continue;
      double x = 0, y = 0;
      auto rx = std::from_chars(a[i].data(), a[i].data() + a[i].size(), x);
      auto ry = std::from_chars(b[i].data(), b[i].data() + b[i].size(), y);
      const bool nx = rx.ec == std::errc() && rx.ptr == a[i].data() + a[i].size();
      const bool ny = ry.ec == std::errc() && ry.ptr == b[i].data() + b[i].size();
      if (nx && ny && x != y) return x < y;
      return a[i] < b[i];
    }
    return a.size() < b.size();
  };
  std::vector<std::vector<std::string>> order;
  for (const Run& run : runs) {
    out << Join(run.key, ',') << (with_bin ? "," + run.bin : "") << ','
        << run.solver << ',' << (run.scenario1 ? 1 : 2) << ','
        << FormatDouble(run.p_before) << ',' << FormatDouble(run.p_after)
        << ',' << FormatDouble(run.gain) << ',' << run.cost.ToString() << ','
        << run.oracle_calls << ',' << run.chosen << "\n";
    time << Join(run.key, ',') << ',' << run.solver << ','
         << FormatDouble(run.wall_ms) << "\n";
    std::vector<std::string> group;
    for (std::size_t c : group_columns) group.push_back(run.key[c]);
    if (with_bin) group.push_back(run.bin);
    group.push_back(run.solver);
    auto [it, fresh] = cells.try_emplace(group);
    if (fresh) order.push_back(group);
    it->second.before.push_back(run.p_before);
    it->second.after.push_back(run.p_after);
    it->second.gain.push_back(run.gain);
    it->second.cost.push_back(run.cost.ToDouble());
  }
  std::stable_sort(order.begin(), order.end(), less);
  for (const auto& group : order) {
    const Cell& cell = cells.at(group);
    const Stats before = Summarize(cell.before);
    const Stats after = Summarize(cell.after);
    const Stats gain = Summarize(cell.gain);
    const Stats cost = Summarize(cell.cost);
    agg << Join(group, ',') << ',' << cell.after.size() << ','
        << FormatDouble(before.mean) << ',' << FormatDouble(after.mean) << ','
        << FormatDouble(after.ci95) << ',' << FormatDouble(gain.mean) << ','
        << FormatDouble(gain.ci95) << ',' << FormatDouble(cost.mean) << "\n";
  }
  return {out.str(), agg.str(), time.str(), ""};
}

ExperimentTables RunSynthetic(const ExperimentConfig& c) {
  const bool mcsr = c.protocol == Protocol::kSyntheticMcsr;
  const std::vector<std::string> solvers =
      c.solvers.empty() ? std::vector<std::string>{"greedy", "exhaustive"}
                        : c.solvers;
  struct Task {
    int instance;
    int n_restrictions;
    int max_per_resource;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < c.instances; ++i) {
    for (int nr : c.restrictions) {
      for (int mpr : c.max_per_resource) tasks.push_back({i, nr, mpr});
    }
  }
  if (c.budgets.empty() || solvers.empty()) tasks.clear();

  std::vector<std::vector<Run>> results(tasks.size());
  ParallelFor(tasks.size(), [&](std::size_t t) {
    const Task& task = tasks[t];
    const std::uint64_t seed =
        MixSeed(MixSeed(c.seed, static_cast<std::uint64_t>(task.instance)),
                (static_cast<std::uint64_t>(task.n_restrictions) << 32) |
                    static_cast<std::uint64_t>(task.max_per_resource));
    const AdviceInstance inst = GenErInstance(
        c.agents, c.resources, c.edge_prob, task.n_restrictions,
        task.max_per_resource,
        mcsr ? ChoiceMode::kMultiChoiceSingleRestriction
             : ChoiceMode::kSingleChoiceMultiRestriction,
        seed);
    for (std::int64_t beta : c.budgets) {
      for (int rep = 0; rep < c.replicates; ++rep) {
        const ProbOracle oracle =
            MakeOracle(c.oracle, MixSeed(seed, static_cast<std::uint64_t>(rep)));
        for (const std::string& solver : solvers) {
          Run run = Execute(inst, beta, solver, oracle);
          run.key = {std::to_string(task.instance), std::to_string(seed),
                     std::to_string(task.n_restrictions),
                     std::to_string(task.max_per_resource),
                     std::to_string(beta), std::to_string(rep)};
          results[t].push_back(std::move(run));
        }
      }
    }
  });
  std::vector<Run> runs;
  for (auto& r : results) {
    for (auto& run : r) runs.push_back(std::move(run));
  }
  return Tabulate({"instance", "instance_seed", "n_restrictions",
                   "max_per_resource", "budget", "replicate"},
                  {2, 3, 4}, false, runs);
}

ExperimentTables RunThreshold(const ExperimentConfig& c) {
  const ThresholdDataset data =
      c.resources_csv ? ReadThresholdCsv(*c.resources_csv, *c.agents_csv)
                      : GenThresholdStandin(c.dataset, c.seed);
  const std::string dataset = c.resources_csv ? "csv" : c.dataset;
  const std::vector<std::string> solvers =
      c.solvers.empty() ? std::vector<std::string>{"auto"} : c.solvers;
  std::size_t n_agents = data.agents.size();
  if (c.agent_limit > 0) {
    n_agents = std::min<std::size_t>(n_agents, c.agent_limit);
  }
  if (c.budgets.empty() || c.schemes.empty() || solvers.empty()) n_agents = 0;

  std::vector<std::vector<Run>> results(n_agents);
  ParallelFor(n_agents, [&](std::size_t a) {
    const std::string& id = data.agents[a].id;
    for (const std::string& scheme_name : c.schemes) {
      const AdviceInstance inst = BuildThresholdInstance(
          data, *ParseCostScheme(scheme_name), id, c.step);
      for (std::int64_t beta : c.budgets) {
        for (int rep = 0; rep < c.replicates; ++rep) {
          const std::uint64_t seed =
              MixSeed(MixSeed(c.seed, a), static_cast<std::uint64_t>(rep));
          const ProbOracle oracle = MakeOracle(c.oracle, seed);
          for (const std::string& solver : solvers) {
            Run run = Execute(inst, beta, solver, oracle);
            run.bin = Bin(run.p_before);
            run.key = {dataset, id, scheme_name, std::to_string(beta),
                       std::to_string(rep)};
            results[a].push_back(std::move(run));
          }
        }
      }
    }
  });
  std::vector<Run> runs;
  for (auto& r : results) {
    for (auto& run : r) runs.push_back(std::move(run));
  }
  ExperimentTables tables = Tabulate(
      {"dataset", "agent", "scheme", "budget", "replicate"}, {0, 2, 3}, true,
      runs);
  // Runtime against budget, per scheme and solver.
  std::map<std::tuple<std::string, std::int64_t, std::string>,
           std::vector<double>>
      times;
  for (const Run& run : runs) {
    times[{run.key[2], std::stoll(run.key[3]), run.solver}].push_back(
        run.wall_ms);
  }
  std::ostringstream rt;
  rt << "dataset,scheme,budget,solver,runs,mean_ms,max_ms\n";
  for (const auto& [k, ms] : times) {
    const auto& [scheme, beta, solver] = k;
    rt << dataset << ',' << scheme << ',' << beta << ',' << solver << ','
       << ms.size() << ',' << FormatDouble(Summarize(ms).mean) << ','
       << FormatDouble(*std::max_element(ms.begin(), ms.end())) << "\n";
  }
  tables.runtime_by_budget = rt.str();
  return tables;
}

}  // namespace

ExperimentTables RunExperiment(const ExperimentConfig& config) {
  return config.protocol == Protocol::kThreshold ? RunThreshold(config)
                                                 : RunSynthetic(config);
}

void WriteExperimentTables(const ExperimentTables& tables,
                           const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const std::string*> files[] = {
      {"runs.csv", &tables.runs},
      {"aggregate.csv", &tables.aggregate},
      {"runtime.csv", &tables.runtime},
      {"runtime_by_budget.csv", &tables.runtime_by_budget}};
  for (const auto& [name, text] : files) {
    if (text->empty()) continue;
    std::ofstream out(dir / name, std::ios::binary);
    out << *text;
    if (!out) throw Error("io", "failed to write " + (dir / name).string());
  }
}

}  // namespace match_advice
