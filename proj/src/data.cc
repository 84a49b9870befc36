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


#include "match_advice/data.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "match_advice/errors.h"
#include "match_advice/random.h"

namespace match_advice {
namespace {

using nlohmann::json;

void RequireProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError(std::string(what) + " must be in [0, 1]");
  }
}

std::vector<Edge> RandomEdges(Rng& rng, int n_agents, int n_resources,
                              double edge_prob) {
  std::vector<Edge> edges;
  for (int a = 0; a < n_agents; ++a) {
    for (int y = 0; y < n_resources; ++y) {
      if (Bernoulli(rng, edge_prob)) edges.push_back({a, y});
    }
  }
  return edges;
}

std::vector<Restriction> UnitRestrictions(int n) {
  std::vector<Restriction> out(n);
  for (int i = 0; i < n; ++i) out[i].id = i;
  return out;
}

}  // namespace

AdviceInstance GenErInstance(int n_agents, int n_resources, double edge_prob,
                             int n_restrictions, int max_restr_per_resource,
                             ChoiceMode mode, std::uint64_t seed) {
  RequireProbability(edge_prob, "edge probability");
  if (n_agents < 1 || n_resources < 1 || n_restrictions < 1 ||
      max_restr_per_resource < 1) {
    throw PreconditionError("generator counts must be >= 1");
  }
  Rng rng(seed);
  std::vector<Edge> edges = RandomEdges(rng, n_agents, n_resources, edge_prob);
  const int x_star = n_agents;

  AdviceInstance inst;
  inst.x_star = x_star;
  inst.restrictions = UnitRestrictions(n_restrictions);
  const int cap = std::min(max_restr_per_resource, n_restrictions);
  std::vector<int> ids(n_restrictions);
  for (int y = 0; y < n_resources; ++y) {
    const int k = static_cast<int>(UniformBelow(rng, cap + 1));
    std::iota(ids.begin(), ids.end(), 0);
    Shuffle(std::span<int>(ids), rng);
    std::vector<int> drawn(ids.begin(), ids.begin() + k);
    std::sort(drawn.begin(), drawn.end());
    if (drawn.empty()) {
      edges.push_back({x_star, y});
    } else if (mode == ChoiceMode::kMultiChoiceSingleRestriction) {
      for (int r : drawn) inst.gamma.push_back({y, {r}});
    } else {
      inst.gamma.push_back({y, std::move(drawn)});
    }
  }
  inst.graph = BipartiteGraph::FromEdges(n_agents + 1, n_resources, edges);
  return inst;
}

MaxCoverageInstance GenMaxCoverageInstance(
    int universe_size, const std::vector<std::vector<int>>& family,
    std::int64_t q, std::int64_t t) {
  if (family.empty()) throw PreconditionError("family must not be empty");
  if (universe_size < 1) throw PreconditionError("universe must be non-empty");
  if (q < 0 || t < 0) throw PreconditionError("q and t must be >= 0");
  const int r = universe_size;
  std::vector<Edge> edges;
  for (int j = 1; j <= r; ++j) edges.push_back({j, j - 1});

  MaxCoverageInstance out;
  AdviceInstance& inst = out.instance;
  inst.x_star = 0;
  inst.restrictions = UnitRestrictions(static_cast<int>(family.size()));
  // Pairs ordered by resource, then set, so equal families give equal files.
  std::vector<std::set<int>> sets_of(r);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (int j : family[i]) {
      if (j < 1 || j > r) {
        throw PreconditionError("set " + std::to_string(i + 1) +
                                " has element " + std::to_string(j) +
                                " outside 1.." + std::to_string(r));
      }
      sets_of[j - 1].insert(static_cast<int>(i));
    }
  }
  for (int y = 0; y < r; ++y) {
    for (int i : sets_of[y]) inst.gamma.push_back({y, {i}});
  }
  inst.graph = BipartiteGraph::FromEdges(r + 1, r, edges);
  out.beta = Cost::FromUnits(q);
  out.target = Rational(static_cast<std::uint64_t>(t),
                        static_cast<std::uint64_t>(t) + 1);
  return out;
}

std::optional<CostScheme> ParseCostScheme(std::string_view name) {
  if (name == "cost1" || name == "uniform") return CostScheme::kUniform;
  if (name == "cost2" || name == "linear") return CostScheme::kLinear;
  return std::nullopt;
}

const char* CostSchemeName(CostScheme scheme) {
  return scheme == CostScheme::kUniform ? "cost1" : "cost2";
}

std::int64_t CostSchemeEval(CostScheme scheme, std::int64_t t) {
  if (t < 0) throw PreconditionError("level count must be >= 0");
  return scheme == CostScheme::kUniform ? t : t * (t + 1) / 2;
}

Cost LevelCost(CostScheme scheme, int k) {
  if (k < 1) throw PreconditionError("level index must be >= 1");
  return Cost::FromUnits(scheme == CostScheme::kUniform ? 1 : k);
}

AdviceInstance GenThresholdInstance(const ThresholdGenOptions& options,
                                    std::uint64_t seed) {
  RequireProbability(options.edge_prob, "edge probability");
  RequireProbability(options.alternative_prob, "alternative probability");
  RequireProbability(options.skip_block_prob, "skip probability");
  if (options.n_agents < 0 || options.n_resources < 1 || options.alpha < 1 ||
      options.max_levels < 1 || options.max_cost < 1) {
    throw PreconditionError("invalid threshold generator options");
  }
  Rng rng(seed);
  std::vector<Edge> edges = RandomEdges(rng, options.n_agents,
                                        options.n_resources, options.edge_prob);
  const int x_star = options.n_agents;

  AdviceInstance inst;
  inst.x_star = x_star;
  inst.type_hint = IncompatibilityType::kThresholdLike;
  std::vector<int> levels(options.alpha);
  std::vector<int> first_id(options.alpha);
  for (int l = 0; l < options.alpha; ++l) {
    levels[l] = 1 + static_cast<int>(UniformBelow(rng, options.max_levels));
    first_id[l] = static_cast<int>(inst.restrictions.size());
    for (int rank = 1; rank <= levels[l]; ++rank) {
      Restriction r;
      r.id = static_cast<int>(inst.restrictions.size());
      r.cost = Cost::FromUnits(
          1 + static_cast<std::int64_t>(UniformBelow(rng, options.max_cost)));
      r.block = l;
      r.rank = rank;
      inst.restrictions.push_back(r);
    }
  }
  auto draw = [&] {
    std::vector<int> need(options.alpha);
    for (int l = 0; l < options.alpha; ++l) {
      if (Bernoulli(rng, options.skip_block_prob)) continue;
      need[l] = 1 + static_cast<int>(UniformBelow(rng, levels[l]));
    }
    return need;
  };
  auto to_set = [&](const std::vector<int>& need) {
    RestrictionSet s;
    for (int l = 0; l < options.alpha; ++l) {
      for (int k = 1; k <= need[l]; ++k) {
        s.push_back(first_id[l] + levels[l] - k);
      }
    }
    return MakeRestrictionSet(std::move(s));
  };
  for (int y = 0; y < options.n_resources; ++y) {
    std::vector<std::vector<int>> needs = {draw()};
    if (Bernoulli(rng, options.alternative_prob)) needs.push_back(draw());
    bool compatible = false;
    for (const auto& need : needs) {
      compatible = compatible || std::all_of(need.begin(), need.end(),
                                 [](int k) { return k == 0; });
    }
    if (compatible) {
      edges.push_back({x_star, y});
      continue;
    }
    for (const auto& need : needs) inst.gamma.push_back({y, to_set(need)});
  }
  inst.graph =
      BipartiteGraph::FromEdges(options.n_agents + 1, options.n_resources,
                                edges);
  return Normalize(inst);
}

// ---------------------------------------------------------------------------
// Threshold CSV.

namespace {

struct CsvTable {
  std::string file;
  std::map<std::string, std::size_t> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // 1-based line of each row
};

std::vector<std::string> SplitLine(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

CsvTable ReadCsv(const std::filesystem::path& path,
                 const std::vector<std::string>& required,
                 const std::vector<std::string>& optional) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  CsvTable table;
  table.file = path.string();
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitLine(line, ',');
    if (!have_header) {
      have_header = true;
      width = fields.size();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string& name = fields[i];
        const bool known =
            std::find(required.begin(), required.end(), name) !=
                required.end() ||
            std::find(optional.begin(), optional.end(), name) != optional.end();
        if (!known) {
          throw ParseError(table.file + ":" + std::to_string(line_no) +
                               ": unknown column '" + name + "'",
                           line_no);
        }
        if (!table.columns.emplace(name, i).second) {
          throw ParseError(table.file + ":" + std::to_string(line_no) +
                               ": duplicate column '" + name + "'",
                           line_no);
        }
      }
      for (const std::string& name : required) {
        if (!table.columns.contains(name)) {
          throw ParseError(table.file + ":" + std::to_string(line_no) +
                               ": missing column '" + name + "'",
                           line_no);
        }
      }
      continue;
    }
    if (fields.size() != width) {
      throw ParseError(table.file + ":" + std::to_string(line_no) +
                           ": expected " + std::to_string(width) +
                           " fields, found " + std::to_string(fields.size()),
                       line_no);
    }
    table.rows.push_back(std::move(fields));
    table.lines.push_back(line_no);
  }
  if (!have_header) throw ParseError(table.file + ": empty file", 1);
  return table;
}

class RowReader {
 public:
  RowReader(const CsvTable& table, std::size_t row)
      : table_(table), row_(row) {}

  bool Has(const std::string& column) const {
    return table_.columns.contains(column);
  }
  const std::string& Text(const std::string& column) const {
    return table_.rows[row_][table_.columns.at(column)];
  }
  std::int64_t Integer(const std::string& column) const {
    const std::string& s = Text(column);
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty() ||
        v < 0) {
      Fail("non-numeric " + column + " '" + s + "'");
    }
    return v;
  }
  bool Boolean(const std::string& column) const {
    const std::string& s = Text(column);
    if (s == "true") return true;
    if (s == "false") return false;
    Fail(column + " must be true or false, found '" + s + "'");
  }
  [[noreturn]] void Fail(const std::string& message) const {
    const std::size_t line = table_.lines[row_];
    throw ParseError(table_.file + ":" + std::to_string(line) + ": " + message,
                     line);
  }

 private:
  const CsvTable& table_;
  std::size_t row_;
};

void CheckPaired(const CsvTable& table, const std::string& a,
                 const std::string& b) {
  if (table.columns.contains(a) != table.columns.contains(b)) {
    throw ParseError(table.file + ":1: columns '" + a + "' and '" + b +
                         "' must appear together",
                     1);
  }
}

const char* Bool(bool b) { return b ? "true" : "false"; }

}  // namespace

ThresholdDataset ReadThresholdCsv(const std::filesystem::path& resources_path,
                                  const std::filesystem::path& agents_path) {
  ThresholdDataset data;
  const CsvTable res = ReadCsv(
      resources_path,
      {"id", "capacity", "region", "physical_access", "hearing_access"},
      {"zoom", "extra_chairs"});
  CheckPaired(res, "zoom", "extra_chairs");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    RowReader row(res, i);
    ResourceRow r;
    r.id = row.Text("id");
    if (r.id.empty() || !seen.insert(r.id).second) {
      row.Fail("missing or duplicate id '" + r.id + "'");
    }
    r.capacity = row.Integer("capacity");
    r.region = row.Text("region");
    r.physical_access = row.Boolean("physical_access");
    r.hearing_access = row.Boolean("hearing_access");
    if (row.Has("zoom")) {
      r.zoom = row.Boolean("zoom");
      r.extra_chairs = row.Integer("extra_chairs");
    }
    data.resources.push_back(std::move(r));
  }

  const CsvTable ag = ReadCsv(agents_path,
                              {"id", "min_capacity", "region_prefs",
                               "needs_physical", "needs_hearing"},
                              {"needs_zoom"});
  seen.clear();
  for (std::size_t i = 0; i < ag.rows.size(); ++i) {
    RowReader row(ag, i);
    AgentRow a;
    a.id = row.Text("id");
    if (a.id.empty() || !seen.insert(a.id).second) {
      row.Fail("missing or duplicate id '" + a.id + "'");
    }
    a.min_capacity = row.Integer("min_capacity");
    a.region_prefs = SplitLine(row.Text("region_prefs"), ';');
    std::set<std::string> regions;
    for (const std::string& region : a.region_prefs) {
      if (region.empty()) row.Fail("empty entry in region_prefs");
      if (!regions.insert(region).second) {
        row.Fail("unordered levels: region '" + region +
                 "' listed twice in region_prefs");
      }
    }
    a.needs_physical = row.Boolean("needs_physical");
    a.needs_hearing = row.Boolean("needs_hearing");
    if (row.Has("needs_zoom")) a.needs_zoom = row.Boolean("needs_zoom");
    data.agents.push_back(std::move(a));
  }
  return data;
}

void WriteThresholdCsv(const ThresholdDataset& data,
                       const std::filesystem::path& resources_path,
                       const std::filesystem::path& agents_path) {
  const bool zc = std::any_of(data.resources.begin(), data.resources.end(),
                              [](const ResourceRow& r) {
                                return r.zoom.has_value();
                              });
  const bool needs_zoom =
      std::any_of(data.agents.begin(), data.agents.end(),
                  [](const AgentRow& a) { return a.needs_zoom.has_value(); });
  std::ofstream res(resources_path, std::ios::binary);
  res << "id,capacity,region,physical_access,hearing_access"
      << (zc ? ",zoom,extra_chairs" : "") << "\n";
  for (const ResourceRow& r : data.resources) {
    res << r.id << ',' << r.capacity << ',' << r.region << ','
        << Bool(r.physical_access) << ',' << Bool(r.hearing_access);
    if (zc) {
      res << ',' << Bool(r.zoom.value_or(false)) << ','
          << r.extra_chairs.value_or(0);
    }
    res << "\n";
  }
  std::ofstream ag(agents_path, std::ios::binary);
  ag << "id,min_capacity,region_prefs,needs_physical,needs_hearing"
     << (needs_zoom ? ",needs_zoom" : "") << "\n";
  for (const AgentRow& a : data.agents) {
    ag << a.id << ',' << a.min_capacity << ',';
    for (std::size_t i = 0; i < a.region_prefs.size(); ++i) {
      ag << (i ? ";" : "") << a.region_prefs[i];
    }
    ag << ',' << Bool(a.needs_physical) << ',' << Bool(a.needs_hearing);
    if (needs_zoom) ag << ',' << Bool(a.needs_zoom.value_or(false));
    ag << "\n";
  }
  if (!res || !ag) {
    throw Error("io", "failed to write " + resources_path.string() + " or " +
                          agents_path.string());
  }
}

namespace {

enum Attribute { kCapacity, kRegion, kPhysical, kHearing, kZoom, kChairs,
                 kNumAttributes };

constexpr const char* kAttributeNames[kNumAttributes] = {
    "capacity", "region", "physical", "hearing", "zoom", "chairs"};

bool AcceptsAsIs(const AgentRow& a, const ResourceRow& r) {
  return r.capacity >= a.min_capacity && !a.region_prefs.empty() &&
         r.region == a.region_prefs.front() &&
         (!a.needs_physical || r.physical_access) &&
         (!a.needs_hearing || r.hearing_access) &&
         (!a.needs_zoom.value_or(false) || r.zoom.value_or(false));
}

std::int64_t CeilDiv(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Minimal level vectors (one entry per attribute) under which agent `a`
// accepts resource `r`; empty when no relaxation helps.
std::vector<std::vector<std::int64_t>> Requirements(const AgentRow& a,
                                                    const ResourceRow& r,
                                                    std::int64_t step) {
  std::vector<std::int64_t> base(kNumAttributes, 0);
  const auto pos =
      std::find(a.region_prefs.begin(), a.region_prefs.end(), r.region);
  if (pos == a.region_prefs.end()) return {};
  base[kRegion] = pos - a.region_prefs.begin();
  base[kPhysical] = a.needs_physical && !r.physical_access;
  base[kHearing] = a.needs_hearing && !r.hearing_access;
  base[kZoom] = a.needs_zoom.value_or(false) && !r.zoom.value_or(false);

  std::vector<std::vector<std::int64_t>> out;
  const std::int64_t deficit = a.min_capacity - r.capacity;
  const std::int64_t chairs = r.extra_chairs.value_or(0);
  if (deficit <= 0) {
    out.push_back(base);
    return out;
  }
  const std::int64_t max_b = CeilDiv(std::min(chairs, deficit), step);
  for (std::int64_t b = 0; b <= max_b; ++b) {
    std::vector<std::int64_t> need = base;
    need[kChairs] = b;
    need[kCapacity] =
        CeilDiv(std::max<std::int64_t>(0, deficit - std::min(chairs, b * step)),
                step);
    out.push_back(std::move(need));
  }
  return out;
}

std::string LevelName(Attribute attr, const AgentRow& a, std::int64_t k,
                      std::int64_t step) {
  switch (attr) {
    case kCapacity:
      return "capacity>=" + std::to_string(a.min_capacity - k * step);
    case kRegion:
      return "region:" + a.region_prefs[k];
    case kChairs:
      return "chairs+" + std::to_string(k * step);
    default:
      return kAttributeNames[attr];
  }
}

}  // namespace

AdviceInstance BuildThresholdInstance(const ThresholdDataset& data,
                                      CostScheme scheme,
                                      std::string_view agent_id,
                                      std::int64_t step) {
  if (step < 1) throw PreconditionError("capacity step must be >= 1");
  const auto it = std::find_if(
      data.agents.begin(), data.agents.end(),
      [&](const AgentRow& a) { return a.id == agent_id; });
  if (it == data.agents.end()) {
    throw PreconditionError("unknown agent id '" + std::string(agent_id) +
                            "'");
  }
  const int x_star = static_cast<int>(it - data.agents.begin());
  const AgentRow& agent = *it;
  const int n_agents = static_cast<int>(data.agents.size());
  const int n_resources = static_cast<int>(data.resources.size());

  std::vector<Edge> edges;
  std::vector<std::vector<std::vector<std::int64_t>>> needs(n_resources);
  std::vector<std::int64_t> depth(kNumAttributes, 0);
  for (int y = 0; y < n_resources; ++y) {
    const ResourceRow& r = data.resources[y];
    for (int j = 0; j < n_agents; ++j) {
      if (j != x_star && AcceptsAsIs(data.agents[j], r)) edges.push_back({j, y});
    }
    needs[y] = Requirements(agent, r, step);
    for (const auto& need : needs[y]) {
      if (std::all_of(need.begin(), need.end(),
                      [](std::int64_t k) { return k == 0; })) {
        edges.push_back({x_star, y});
        needs[y].clear();
        break;
      }
      for (int attr = 0; attr < kNumAttributes; ++attr) {
        depth[attr] = std::max(depth[attr], need[attr]);
      }
    }
  }

  AdviceInstance inst;
  inst.x_star = x_star;
  inst.type_hint = IncompatibilityType::kThresholdLike;
  // Level k of an attribute with t levels has rank t - k + 1; ids run by
  // block, rank 1 first.
  std::vector<int> first_id(kNumAttributes, -1);
  int block = 0;
  for (int attr = 0; attr < kNumAttributes; ++attr) {
    const std::int64_t t = depth[attr];
    if (t == 0) continue;
    first_id[attr] = static_cast<int>(inst.restrictions.size());
    for (std::int64_t rank = 1; rank <= t; ++rank) {
      const std::int64_t k = t - rank + 1;
      Restriction r;
      r.id = static_cast<int>(inst.restrictions.size());
      r.cost = LevelCost(scheme, static_cast<int>(k));
      r.block = block;
      r.rank = static_cast<int>(rank);
      r.name = LevelName(static_cast<Attribute>(attr), agent, k, step);
      inst.restrictions.push_back(std::move(r));
    }
    ++block;
  }
  for (int y = 0; y < n_resources; ++y) {
    for (const auto& need : needs[y]) {
      RestrictionSet s;
      for (int attr = 0; attr < kNumAttributes; ++attr) {
        for (std::int64_t k = 1; k <= need[attr]; ++k) {
          s.push_back(first_id[attr] + static_cast<int>(depth[attr] - k));
        }
      }
      inst.gamma.push_back({y, MakeRestrictionSet(std::move(s))});
    }
  }
  if (inst.restrictions.empty()) inst.type_hint.reset();
  inst.graph = BipartiteGraph::FromEdges(n_agents, n_resources, edges);
  return Normalize(inst);
}

AdviceInstance LoadThresholdCsv(const std::filesystem::path& resources_path,
                                const std::filesystem::path& agents_path,
                                CostScheme scheme, std::string_view agent_id,
                                std::int64_t step) {
  return BuildThresholdInstance(ReadThresholdCsv(resources_path, agents_path),
                                scheme, agent_id, step);
}

namespace {

struct StandinShape {
  int resources;
  int agents;
  int regions;
  bool zoom_chairs;
  std::int64_t min_room;  // capacities are multiples of 10 in [min, max]
  std::int64_t max_room;
  std::int64_t min_need;
  std::int64_t max_need;
};

std::optional<StandinShape> ShapeOf(std::string_view preset) {
  if (preset == "desk") return StandinShape{12, 15, 4, false, 20, 80, 20, 70};
  if (preset == "desk-zc") return StandinShape{12, 15, 4, true, 20, 80, 20, 70};
  if (preset == "cocl") {
    return StandinShape{144, 154, 6, false, 20, 200, 20, 150};
  }
  if (preset == "cocl-zc") {
    return StandinShape{144, 154, 6, true, 20, 200, 20, 150};
  }
  if (preset == "passvac") {
    return StandinShape{249, 603, 8, false, 10, 40, 10, 40};
  }
  return std::nullopt;
}

std::int64_t TensIn(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return 10 * (lo / 10 + static_cast<std::int64_t>(
                             UniformBelow(rng, (hi - lo) / 10 + 1)));
}

std::string NumberedId(char prefix, int i) {
  std::string digits = std::to_string(i);
  return std::string(1, prefix) + std::string(digits.size() < 3
                                                  ? 3 - digits.size()
                                                  : 0,
                                              '0') +
         digits;
}

}  // namespace

std::vector<std::string> ThresholdStandinPresets() {
  return {"desk", "desk-zc", "cocl", "cocl-zc", "passvac"};
}

ThresholdDataset GenThresholdStandin(std::string_view preset,
                                     std::uint64_t seed) {
  const std::optional<StandinShape> shape = ShapeOf(preset);
  if (!shape) {
    throw PreconditionError("unknown stand-in preset '" + std::string(preset) +
                            "'");
  }
  Rng rng(seed);
  std::vector<std::string> regions;
  for (int i = 1; i <= shape->regions; ++i) {
    regions.push_back("R" + std::to_string(i));
  }
  ThresholdDataset data;
  for (int i = 1; i <= shape->resources; ++i) {
    ResourceRow r;
    r.id = NumberedId('y', i);
    r.capacity = TensIn(rng, shape->min_room, shape->max_room);
    r.region = regions[UniformBelow(rng, regions.size())];
    r.physical_access = Bernoulli(rng, 0.75);
    r.hearing_access = Bernoulli(rng, 0.35);
    if (shape->zoom_chairs) {
      r.zoom = Bernoulli(rng, 0.5);
      r.extra_chairs = 10 * static_cast<std::int64_t>(UniformBelow(rng, 4));
    }
    data.resources.push_back(std::move(r));
  }
  for (int i = 1; i <= shape->agents; ++i) {
    AgentRow a;
    a.id = NumberedId('x', i);
    a.min_capacity = TensIn(rng, shape->min_need, shape->max_need);
    std::vector<std::string> order = regions;
    Shuffle(std::span<std::string>(order), rng);
    order.resize(1 + UniformBelow(rng, std::min<std::size_t>(3, order.size())));
    a.region_prefs = std::move(order);
    a.needs_physical = Bernoulli(rng, 0.1);
    a.needs_hearing = Bernoulli(rng, 0.08);
    if (shape->zoom_chairs) a.needs_zoom = Bernoulli(rng, 0.4);
    data.agents.push_back(std::move(a));
  }
  return data;
}

// ---------------------------------------------------------------------------
// Instance JSON.

std::string InstanceToJson(const AdviceInstance& inst) {
  json j;
  j["agents"] = inst.graph.num_agents();
  j["resources"] = inst.graph.num_resources();
  json edges = json::array();
  for (const Edge& e : inst.graph.Edges()) {
    edges.push_back({e.agent, e.resource});
  }
  j["edges"] = std::move(edges);
  j["special_agent"] = inst.x_star;
  json restrictions = json::array();
  for (const Restriction& r : inst.restrictions) {
    json o;
    o["id"] = r.id;
    if (r.cost.IsInteger()) {
      o["cost"] = r.cost.units();
    } else {
      o["cost"] = r.cost.ToString();
    }
    if (r.block) o["block"] = *r.block;
    if (r.rank) o["rank"] = *r.rank;
    if (!r.name.empty()) o["name"] = r.name;
    restrictions.push_back(std::move(o));
  }
  j["restrictions"] = std::move(restrictions);
  json gamma = json::array();
  for (const IncompatibilityPair& p : inst.gamma) {
    gamma.push_back({{"resource", p.resource}, {"requires", p.requires_set}});
  }
  j["incompatibility"] = std::move(gamma);
  if (inst.type_hint) j["type_hint"] = IncompatibilityTypeName(*inst.type_hint);
  return j.dump(1) + "\n";
}

namespace {

[[noreturn]] void TypeFail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what, 0);
}

const json& Field(const json& obj, const std::string& key,
                  const std::string& where) {
  if (!obj.is_object()) TypeFail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) TypeFail(where, "missing key '" + key + "'");
  return *it;
}

int Int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) TypeFail(where, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() ||
      x > std::numeric_limits<int>::max()) {
    TypeFail(where, "integer out of range");
  }
  return static_cast<int>(x);
}

const json& Array(const json& v, const std::string& where) {
  if (!v.is_array()) TypeFail(where, "expected an array");
  return v;
}

Cost CostOf(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x < 0 || x > std::numeric_limits<std::int64_t>::max() / Cost::kScale) {
      TypeFail(where, "cost out of range");
    }
    return Cost::FromUnits(x);
  }
  if (v.is_string()) {
    try {
      return Cost::Parse(v.get<std::string>());
    } catch (const ParseError& e) {
      TypeFail(where, e.what());
    }
  }
  TypeFail(where, "cost must be an integer or a decimal string");
}

}  // namespace

AdviceInstance InstanceFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                         e.what(),
                     e.byte);
  }
  const int na = Int(Field(j, "agents", "$"), "$.agents");
  const int nr = Int(Field(j, "resources", "$"), "$.resources");
  if (na < 0 || nr < 0) TypeFail("$", "counts must be non-negative");

  std::vector<std::string> violations;
  std::vector<Edge> edges;
  const json& jedges = Array(Field(j, "edges", "$"), "$.edges");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string where = "$.edges[" + std::to_string(i) + "]";
    const json& e = Array(jedges[i], where);
    if (e.size() != 2) TypeFail(where, "expected [agent, resource]");
    const Edge edge{Int(e[0], where), Int(e[1], where)};
    if (edge.agent < 0 || edge.agent >= na || edge.resource < 0 ||
        edge.resource >= nr) {
      violations.push_back("edge " + std::to_string(i) + " out of range");
      continue;
    }
    edges.push_back(edge);
  }

  AdviceInstance inst;
  inst.x_star = Int(Field(j, "special_agent", "$"), "$.special_agent");
  const json& jr = Array(Field(j, "restrictions", "$"), "$.restrictions");
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string where = "$.restrictions[" + std::to_string(i) + "]";
    Restriction r;
    r.id = Int(Field(jr[i], "id", where), where + ".id");
    r.cost = CostOf(Field(jr[i], "cost", where), where + ".cost");
    if (jr[i].contains("block")) r.block = Int(jr[i]["block"], where + ".block");
    if (jr[i].contains("rank")) r.rank = Int(jr[i]["rank"], where + ".rank");
    if (jr[i].contains("name")) {
      if (!jr[i]["name"].is_string()) TypeFail(where + ".name", "expected a string");
      r.name = jr[i]["name"].get<std::string>();
    }
    inst.restrictions.push_back(std::move(r));
  }
  const json& jg = Array(Field(j, "incompatibility", "$"), "$.incompatibility");
  for (std::size_t i = 0; i < jg.size(); ++i) {
    const std::string where = "$.incompatibility[" + std::to_string(i) + "]";
    IncompatibilityPair p;
    p.resource = Int(Field(jg[i], "resource", where), where + ".resource");
    const json& req = Array(Field(jg[i], "requires", where), where + ".requires");
    for (const json& r : req) p.requires_set.push_back(Int(r, where + ".requires"));
    inst.gamma.push_back(std::move(p));
  }
  if (j.contains("type_hint")) {
    const json& h = j["type_hint"];
    if (!h.is_string()) TypeFail("$.type_hint", "expected a string");
    inst.type_hint = ParseIncompatibilityType(h.get<std::string>());
    if (!inst.type_hint) {
      TypeFail("$.type_hint", "unknown type '" + h.get<std::string>() + "'");
    }
  }

  if (!violations.empty()) throw ValidationError(std::move(violations));
  inst.graph = BipartiteGraph::FromEdges(na, nr, edges);
  if (ValidationReport report = ValidateInstance(inst); !report.ok()) {
    throw ValidationError(std::move(report.violations));
  }
  return inst;
}

void SaveInstance(const AdviceInstance& inst,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << InstanceToJson(inst);
  if (!out) throw Error("io", "failed to write " + path.string());
}

AdviceInstance LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return InstanceFromJson(buffer.str());
}

}  // namespace match_advice
