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


#include "match_advice/cli.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "match_advice/data.h"
#include "match_advice/errors.h"
#include "match_advice/experiment.h"
#include "match_advice/matchenum.h"
#include "match_advice/solvers.h"

namespace match_advice {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json EstimateJson(const ProbEstimate& p) {
  json j;
  j["value"] = p.value;
  j["samples"] = p.samples;
  j["method"] = ProbMethodName(p.method);
  if (p.ratio) j["ratio"] = p.ratio->ToString();
  return j;
}

std::vector<std::vector<int>> ParseFamily(const std::string& text) {
  // "1,2;2,3" -> {{1,2},{2,3}}
  std::vector<std::vector<int>> family;
  std::stringstream sets(text);
  std::string set;
  while (std::getline(sets, set, ';')) {
    std::vector<int> elements;
    std::stringstream items(set);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        elements.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("--family: bad element '" + item + "'");
      }
    }
    family.push_back(std::move(elements));
  }
  return family;
}

Cost ParseBudget(const std::string& text) {
  try {
    return Cost::Parse(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--budget: ") + e.what());
  }
}

void WriteText(const std::string& path, const std::string& text,
               std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw Error("io", "failed to write " + path);
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct OracleFlags {
  std::string method = "exact";
  std::uint64_t samples = 1000;
  std::uint64_t theta_hk = 100;
  std::uint64_t theta_u = 9;
  std::uint64_t seed = 1;
  std::uint64_t enum_budget = kDefaultEnumerationBudget;

  void Add(CLI::App* cmd, const std::string& method_flag) {
    cmd->add_option(method_flag, method, "exact | sample | hkuno")
        ->check(CLI::IsMember({"exact", "sample", "hkuno"}));
    cmd->add_option("--samples", samples, "draws for the sampling estimator")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--theta-hk", theta_hk, "HK-Uno: sampled matchings")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--theta-u", theta_u,
                    "HK-Uno: enumeration steps after each sample");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--enum-budget", enum_budget,
                    "exact: maximum matchings to enumerate")
        ->check(CLI::PositiveNumber);
  }
  ProbOracle Make() const {
    OracleConfig c;
    c.method = method;
    c.samples = samples;
    c.theta_hk = theta_hk;
    c.theta_u = theta_u;
    c.budget = enum_budget;
    return MakeOracle(c, seed);
  }
};

json SolutionJson(const AdviceInstance& inst, const Solution& s,
                  const ProbOracle& oracle) {
  json j;
  j["chosen"] = s.chosen;
  std::vector<std::string> names;
  for (int r : s.chosen) names.push_back(inst.restrictions[r].name);
  if (std::any_of(names.begin(), names.end(),
                  [](const std::string& n) { return !n.empty(); })) {
    j["chosen_names"] = names;
  }
  j["cost"] = s.cost.ToString();
  j["probability"] = EstimateJson(s.probability);
  j["baseline"] = EstimateJson(s.baseline);
  j["gain"] = s.gain;
  j["scenario"] = s.scenario1 ? 1 : 2;
  j["solver"] = s.solver;
  j["oracle"] = oracle.name();
  j["oracle_calls"] = s.oracle_calls;
  if (s.type) j["type"] = IncompatibilityTypeName(*s.type);
  if (s.first_zero_gain_iteration) {
    j["first_zero_gain_iteration"] = *s.first_zero_gain_iteration;
  }
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

std::string SolutionCsv(const Solution& s, const ProbOracle& oracle) {
  std::ostringstream out;
  out << "chosen,cost,p_before,p_after,gain,scenario,solver,oracle,"
         "oracle_calls,type\n";
  for (std::size_t i = 0; i < s.chosen.size(); ++i) {
    out << (i ? ";" : "") << s.chosen[i];
  }
  out << ',' << s.cost.ToString() << ',' << FormatDouble(s.baseline.value)
      << ',' << FormatDouble(s.probability.value) << ','
      << FormatDouble(s.gain) << ',' << (s.scenario1 ? 1 : 2) << ','
      << s.solver << ',' << oracle.name() << ',' << s.oracle_calls << ','
      << (s.type ? IncompatibilityTypeName(*s.type) : "") << "\n";
  return out.str();
}

json ErrorJson(const std::string& kind, const std::string& message) {
  return json{{"error", kind}, {"message", message}};
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Advice for improving an agent's chance of being matched.",
               "match_advisor"};
  app.require_subcommand(1);

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate instances or datasets");
  gen->require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 1;

  CLI::App* gen_er = gen->add_subcommand("er", "random multi-/single-choice "
                                               "instance");
  int er_agents = 40, er_resources = 20, er_restrictions = 10, er_max = 4;
  double er_p = 0.2;
  std::string er_mode = "mcsr";
  gen_er->add_option("--agents", er_agents)->check(CLI::PositiveNumber);
  gen_er->add_option("--resources", er_resources)->check(CLI::PositiveNumber);
  gen_er->add_option("--edge-prob", er_p)->check(CLI::Range(0.0, 1.0));
  gen_er->add_option("--restrictions", er_restrictions)
      ->check(CLI::PositiveNumber);
  gen_er->add_option("--max-per-resource", er_max)->check(CLI::PositiveNumber);
  gen_er->add_option("--mode", er_mode)->check(CLI::IsMember({"mcsr", "scmr"}));
  gen_er->add_option("--seed", seed);
  gen_er->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* gen_mc = gen->add_subcommand("maxcov", "Max-Coverage reduction");
  int mc_universe = 0;
  std::string mc_family;
  std::int64_t mc_q = 0, mc_t = 0;
  gen_mc->add_option("--universe", mc_universe, "r: elements are 1..r")
      ->required();
  gen_mc->add_option("--family", mc_family, "sets, e.g. \"1,2;2,3\"")
      ->required();
  gen_mc->add_option("--q", mc_q, "number of sets allowed")->required();
  gen_mc->add_option("--t", mc_t, "elements to cover")->required();
  gen_mc->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* gen_ts = gen->add_subcommand(
      "threshold-standin", "synthetic threshold CSV dataset (stand-in)");
  std::string ts_preset = "desk", ts_dir, ts_agent, ts_scheme = "cost1";
  std::int64_t ts_step = 10;
  gen_ts->add_option("--preset", ts_preset)
      ->check(CLI::IsMember(ThresholdStandinPresets()));
  gen_ts->add_option("--seed", seed);
  gen_ts->add_option("--out-dir", ts_dir, "directory for the CSV files")
      ->required();
  gen_ts->add_option("--agent", ts_agent,
                     "also write instance.json for this agent id");
  gen_ts->add_option("--scheme", ts_scheme)
      ->check(CLI::IsMember({"cost1", "cost2"}));
  gen_ts->add_option("--step", ts_step)->check(CLI::PositiveNumber);

  CLI::App* gen_th = gen->add_subcommand(
      "threshold", "instance for one agent of a threshold CSV dataset");
  std::string th_resources, th_agents;
  gen_th->add_option("--resources", th_resources)->required();
  gen_th->add_option("--agents", th_agents)->required();
  gen_th->add_option("--agent", ts_agent)->required();
  gen_th->add_option("--scheme", ts_scheme)
      ->check(CLI::IsMember({"cost1", "cost2"}));
  gen_th->add_option("--step", ts_step)->check(CLI::PositiveNumber);
  gen_th->add_option("--out", out_path, "output file (default stdout)");

  // estimate
  std::string instance_path;
  OracleFlags oracle_flags;
  CLI::App* estimate =
      app.add_subcommand("estimate", "probability that x* is matched");
  estimate->add_option("--instance", instance_path)->required();
  oracle_flags.Add(estimate, "--method");

  // advise
  CLI::App* advise = app.add_subcommand("advise", "restrictions to relax");
  std::string budget_text = "1", solver_name = "auto", out_format = "json";
  bool min_cost_witness = false;
  advise->add_option("--instance", instance_path)->required();
  advise->add_option("--budget", budget_text, "relaxation budget")->required();
  advise->add_option("--solver", solver_name)
      ->check(CLI::IsMember({"auto", "greedy", "threshold", "exhaustive"}));
  oracle_flags.Add(advise, "--oracle");
  advise->add_option("--out", out_format)->check(CLI::IsMember({"json", "csv"}));
  advise->add_flag("--min-cost-witness", min_cost_witness,
                   "cheapest Scenario-1 witness instead of the first");

  // enumerate
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "list maximum matchings, one per line");
  std::uint64_t cap = 0;
  enumerate->add_option("--instance", instance_path)->required();
  enumerate->add_option("--cap", cap, "stop after this many (0 = all)");

  // validate
  CLI::App* validate = app.add_subcommand("validate", "check an instance");
  validate->add_option("--instance", instance_path)->required();

  // experiment
  CLI::App* experiment =
      app.add_subcommand("experiment", "run an experiment protocol");
  std::string protocol_name, config_path, out_dir;
  experiment->add_option("protocol", protocol_name)
      ->required()
      ->check(CLI::IsMember({"synthetic-mcsr", "synthetic-scmr", "threshold"}));
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << ErrorJson("usage", e.what()).dump() << "\n";
    return 2;
  }

  try {
    if (gen_er->parsed()) {
      const AdviceInstance inst = GenErInstance(
          er_agents, er_resources, er_p, er_restrictions, er_max,
          er_mode == "mcsr" ? ChoiceMode::kMultiChoiceSingleRestriction
                            : ChoiceMode::kSingleChoiceMultiRestriction,
          seed);
      WriteText(out_path, InstanceToJson(inst), out);
    } else if (gen_mc->parsed()) {
      const MaxCoverageInstance mc =
          GenMaxCoverageInstance(mc_universe, ParseFamily(mc_family), mc_q, mc_t);
      if (out_path.empty() || out_path == "-") {
        out << InstanceToJson(mc.instance);
      } else {
        WriteText(out_path, InstanceToJson(mc.instance), out);
        out << json{{"instance", out_path},
                    {"budget", mc.beta.ToString()},
                    {"target", mc.target.ToString()}}
                   .dump()
            << "\n";
      }
    } else if (gen_ts->parsed()) {
      const std::filesystem::path dir(ts_dir);
      std::filesystem::create_directories(dir);
      const ThresholdDataset data = GenThresholdStandin(ts_preset, seed);
      WriteThresholdCsv(data, dir / "resources.csv", dir / "agents.csv");
      json summary{{"preset", ts_preset},
                   {"resources", (dir / "resources.csv").string()},
                   {"agents", (dir / "agents.csv").string()}};
      if (!ts_agent.empty()) {
        const AdviceInstance inst = BuildThresholdInstance(
            data, *ParseCostScheme(ts_scheme), ts_agent, ts_step);
        SaveInstance(inst, dir / "instance.json");
        summary["instance"] = (dir / "instance.json").string();
      }
      out << summary.dump() << "\n";
    } else if (gen_th->parsed()) {
      const AdviceInstance inst =
          LoadThresholdCsv(th_resources, th_agents,
                           *ParseCostScheme(ts_scheme), ts_agent, ts_step);
      WriteText(out_path, InstanceToJson(inst), out);
    } else if (estimate->parsed()) {
      const AdviceInstance inst = LoadInstance(instance_path);
      const ProbOracle oracle = oracle_flags.Make();
      out << EstimateJson(oracle(inst.graph, inst.x_star)).dump() << "\n";
    } else if (advise->parsed()) {
      const Cost beta = ParseBudget(budget_text);
      const AdviceInstance inst = LoadInstance(instance_path);
      AdviseConfig config{*ParseSolverChoice(solver_name), oracle_flags.Make(),
                          min_cost_witness};
      const Solution s = Advise(inst, beta, config);
      if (out_format == "csv") {
        out << SolutionCsv(s, config.oracle);
      } else {
        out << SolutionJson(inst, s, config.oracle).dump() << "\n";
      }
    } else if (enumerate->parsed()) {
      const AdviceInstance inst = LoadInstance(instance_path);
      MaxMatchingEnumerator e(inst.graph);
      while (cap == 0 || e.produced() < cap) {
        std::optional<Matching> m = e.Next();
        if (!m) break;
        json line = json::array();
        for (const Edge& p : m->pairs()) line.push_back({p.agent, p.resource});
        out << line.dump() << "\n";
      }
    } else if (validate->parsed()) {
      const AdviceInstance inst = LoadInstance(instance_path);
      out << json{{"ok", true},
                  {"violations", json::array()},
                  {"type", IncompatibilityTypeName(Classify(inst))}}
                 .dump()
          << "\n";
    } else if (experiment->parsed()) {
      const Protocol protocol = *ParseProtocol(protocol_name);
      const ExperimentConfig config =
          ParseExperimentConfig(ReadText(config_path), protocol);
      const ExperimentTables tables = RunExperiment(config);
      WriteExperimentTables(tables, out_dir);
      const auto rows = std::count(tables.runs.begin(), tables.runs.end(), '\n');
      out << json{{"protocol", protocol_name},
                  {"out", out_dir},
                  {"runs", rows > 0 ? rows - 1 : 0}}
                 .dump()
          << "\n";
    }
  } catch (const UsageError& e) {
    err << ErrorJson("usage", e.what()).dump() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    json j = ErrorJson(e.kind(), e.what());
    j["violations"] = e.violations();
    if (validate->parsed()) {
      out << json{{"ok", false}, {"violations", e.violations()}}.dump() << "\n";
    }
    err << j.dump() << "\n";
    return 1;
  } catch (const ParseError& e) {
    json j = ErrorJson(e.kind(), e.what());
    j["location"] = e.location();
    err << j.dump() << "\n";
    return 1;
  } catch (const Error& e) {
    err << ErrorJson(e.kind(), e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << ErrorJson("internal", e.what()).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace match_advice
