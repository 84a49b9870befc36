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

#include "match_advice/advice.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>

#include "match_advice/errors.h"

namespace match_advice {
namespace {

bool IsSubset(const RestrictionSet& small, const RestrictionSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<char> Membership(const AdviceInstance& inst,
                             std::span<const int> relaxed) {
  std::vector<char> in(inst.restrictions.size(), 0);
  for (int r : relaxed) {
    if (r < 0 || static_cast<std::size_t>(r) >= in.size()) {
      throw IndexError("unknown restriction id " + std::to_string(r));
    }
    in[r] = 1;
  }
  return in;
}

std::string PairName(const IncompatibilityPair& p) {
  std::string s = "(y" + std::to_string(p.resource) + ", {";
  for (std::size_t i = 0; i < p.requires_set.size(); ++i) {
    if (i) s += ",";
    s += "r" + std::to_string(p.requires_set[i]);
  }
  return s + "})";
}

// Block layout of a threshold-like restriction set: block -> rank -> id.
// Empty when some restriction has no block.
struct BlockLayout {
  std::map<int, std::map<int, int>> ranks;
  bool complete = false;  // every restriction has block and rank
};

BlockLayout LayoutOf(const AdviceInstance& inst) {
  BlockLayout layout;
  layout.complete = !inst.restrictions.empty();
  for (const Restriction& r : inst.restrictions) {
    if (!r.block || !r.rank) {
      layout.complete = false;
      continue;
    }
    layout.ranks[*r.block][*r.rank] = r.id;
  }
  return layout;
}

bool BlocksWellFormed(const AdviceInstance& inst, const BlockLayout& layout) {
  std::size_t seen = 0;
  for (const auto& [block, ranks] : layout.ranks) {
    int expect = 1;
    for (const auto& [rank, id] : ranks) {
      if (rank != expect++) return false;
    }
    seen += ranks.size();
  }
  return seen == inst.restrictions.size();
}

bool PairIsSuffixUnion(const AdviceInstance& inst, const BlockLayout& layout,
                       const IncompatibilityPair& p) {
  std::map<int, std::vector<int>> ranks_in_pair;
  for (int id : p.requires_set) {
    const Restriction& r = inst.restrictions[id];
    if (!r.block || !r.rank) return false;
    ranks_in_pair[*r.block].push_back(*r.rank);
  }
  for (auto& [block, ranks] : ranks_in_pair) {
    std::sort(ranks.begin(), ranks.end());
    const int top = static_cast<int>(layout.ranks.at(block).size());
    // Must be exactly {min, ..., top}.
    if (ranks.back() != top) return false;
    if (ranks.back() - ranks.front() + 1 != static_cast<int>(ranks.size())) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> MinimalityViolations(const AdviceInstance& inst) {
  std::vector<std::string> out;
  std::map<int, std::vector<const IncompatibilityPair*>> by_resource;
  for (const auto& p : inst.gamma) by_resource[p.resource].push_back(&p);
  for (const auto& [y, pairs] : by_resource) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (i == j) continue;
        const auto& a = pairs[i]->requires_set;
        const auto& b = pairs[j]->requires_set;
        if (a == b && i < j) {
          out.push_back("duplicate pair " + PairName(*pairs[i]));
        } else if (a != b && IsSubset(a, b)) {
          out.push_back("minimality: " + PairName(*pairs[j]) +
                        " is dominated by " + PairName(*pairs[i]));
        }
      }
    }
  }
  return out;
}

}  // namespace

Cost Cost::Parse(std::string_view text) {
  auto fail = [&] {
    return ParseError("invalid cost '" + std::string(text) + "'", 0);
  };
  if (text.empty()) throw fail();
  const std::size_t dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 6 ||
      (dot != std::string_view::npos && frac.empty())) {
    throw fail();
  }
  auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(whole) || !all_digits(frac)) throw fail();
  std::int64_t units = 0;
  auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(),
                                 units);
  if (ec != std::errc() || units > 9'000'000'000'000LL) throw fail();
  std::int64_t scaled_frac = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    scaled_frac = scaled_frac * 10 + (i < frac.size() ? frac[i] - '0' : 0);
  }
  return Cost(units * kScale + scaled_frac);
}

std::string Cost::ToString() const {
  std::string s = std::to_string(scaled_ / kScale);
  std::int64_t frac = scaled_ % kScale;
  if (frac == 0) return s;
  std::string digits = std::to_string(frac);
  digits.insert(0, 6 - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  return s + "." + digits;
}

RestrictionSet MakeRestrictionSet(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

const char* IncompatibilityTypeName(IncompatibilityType type) {
  switch (type) {
    case IncompatibilityType::kSingleChoiceSingleRestriction:
      return "single_choice_single_restriction";
    case IncompatibilityType::kMultiChoiceSingleRestriction:
      return "multi_choice_single_restriction";
    case IncompatibilityType::kSingleChoiceMultiRestriction:
      return "single_choice_multi_restriction";
    case IncompatibilityType::kMultiChoiceMultiRestriction:
      return "multi_choice_multi_restriction";
    case IncompatibilityType::kThresholdLike:
      return "threshold_like";
  }
  return "?";
}

std::optional<IncompatibilityType> ParseIncompatibilityType(
    std::string_view name) {
  for (auto t : {IncompatibilityType::kSingleChoiceSingleRestriction,
                 IncompatibilityType::kMultiChoiceSingleRestriction,
                 IncompatibilityType::kSingleChoiceMultiRestriction,
                 IncompatibilityType::kMultiChoiceMultiRestriction,
                 IncompatibilityType::kThresholdLike}) {
    if (name == IncompatibilityTypeName(t)) return t;
  }
  return std::nullopt;
}

std::vector<int> UnlockedResources(const AdviceInstance& inst,
                                   std::span<const int> relaxed) {
  const std::vector<char> in = Membership(inst, relaxed);
  std::vector<int> unlocked;
  for (const auto& p : inst.gamma) {
    const bool all = std::all_of(
        p.requires_set.begin(), p.requires_set.end(), [&](int r) {
          if (r < 0 || static_cast<std::size_t>(r) >= in.size()) {
            throw IndexError("pair references unknown restriction " +
                             std::to_string(r));
          }
          return in[r] != 0;
        });
    if (all) unlocked.push_back(p.resource);
  }
  return MakeRestrictionSet(std::move(unlocked));
}

BipartiteGraph ApplyRelaxation(const AdviceInstance& inst,
                               std::span<const int> relaxed) {
  return AddAgentEdges(inst.graph, inst.x_star,
                       UnlockedResources(inst, relaxed));
}

Cost RelaxationCost(const AdviceInstance& inst, std::span<const int> relaxed) {
  const std::vector<char> in = Membership(inst, relaxed);
  Cost total;
  for (std::size_t r = 0; r < in.size(); ++r) {
    if (in[r]) total += inst.restrictions[r].cost;
  }
  return total;
}

IncompatibilityType Classify(const AdviceInstance& inst) {
  if (auto v = MinimalityViolations(inst); !v.empty()) {
    throw ValidationError(std::move(v));
  }
  const BlockLayout layout = LayoutOf(inst);
  if (layout.complete && BlocksWellFormed(inst, layout) &&
      std::all_of(inst.gamma.begin(), inst.gamma.end(), [&](const auto& p) {
        return PairIsSuffixUnion(inst, layout, p);
      })) {
    return IncompatibilityType::kThresholdLike;
  }
  std::map<int, int> pairs_per_resource;
  bool all_single = true;
  for (const auto& p : inst.gamma) {
    ++pairs_per_resource[p.resource];
    if (p.requires_set.size() > 1) all_single = false;
  }
  const bool single_choice =
      std::all_of(pairs_per_resource.begin(), pairs_per_resource.end(),
                  [](const auto& kv) { return kv.second == 1; });
  if (single_choice && all_single) {
    return IncompatibilityType::kSingleChoiceSingleRestriction;
  }
  if (all_single) return IncompatibilityType::kMultiChoiceSingleRestriction;
  if (single_choice) return IncompatibilityType::kSingleChoiceMultiRestriction;
  return IncompatibilityType::kMultiChoiceMultiRestriction;
}

ValidationReport ValidateInstance(const AdviceInstance& inst) {
  ValidationReport report;
  auto add = [&](std::string s) { report.violations.push_back(std::move(s)); };
  const BipartiteGraph& g = inst.graph;
  const bool agent_ok = inst.x_star >= 0 && inst.x_star < g.num_agents();
  if (!agent_ok) {
    add("special agent " + std::to_string(inst.x_star) + " out of range");
  }

  const int nr = static_cast<int>(inst.restrictions.size());
  int with_block = 0;
  for (int i = 0; i < nr; ++i) {
    const Restriction& r = inst.restrictions[i];
    if (r.id != i) {
      add("restriction at position " + std::to_string(i) + " has id " +
          std::to_string(r.id) + "; ids must be dense and ordered");
    }
    if (r.cost <= Cost()) {
      add("restriction r" + std::to_string(i) + " has non-positive cost");
    }
    if (r.block.has_value() != r.rank.has_value()) {
      add("restriction r" + std::to_string(i) +
          " has only one of block and rank");
    }
    if (r.block && *r.block < 0) {
      add("restriction r" + std::to_string(i) + " has a negative block");
    }
    if (r.rank && *r.rank < 1) {
      add("restriction r" + std::to_string(i) + " has rank < 1");
    }
    if (r.block) ++with_block;
  }
  if (with_block > 0 && with_block < nr) {
    add("mixed instance: some restrictions belong to threshold blocks and "
        "some do not");
  }
  const BlockLayout layout = LayoutOf(inst);
  if (layout.complete && !BlocksWellFormed(inst, layout)) {
    add("block ranks must be unique and contiguous from 1 in every block");
  }

  bool indices_ok = agent_ok;
  for (const auto& p : inst.gamma) {
    if (p.resource < 0 || p.resource >= g.num_resources()) {
      add("pair resource " + std::to_string(p.resource) + " out of range");
      indices_ok = false;
      continue;
    }
    if (p.requires_set.empty()) {
      add("pair for resource y" + std::to_string(p.resource) +
          " has an empty restriction set");
    }
    if (!std::is_sorted(p.requires_set.begin(), p.requires_set.end()) ||
        std::adjacent_find(p.requires_set.begin(), p.requires_set.end()) !=
            p.requires_set.end()) {
      add("pair " + PairName(p) + " restriction set not sorted and unique");
    }
    for (int r : p.requires_set) {
      if (r < 0 || r >= nr) {
        add("pair " + PairName(p) + " references unknown restriction");
        indices_ok = false;
        break;
      }
    }
    if (agent_ok && g.HasEdge(inst.x_star, p.resource)) {
      add("resource y" + std::to_string(p.resource) +
          " is already compatible with the special agent");
    }
  }
  for (auto& v : MinimalityViolations(inst)) add(std::move(v));

  const bool threshold_claimed =
      inst.type_hint == IncompatibilityType::kThresholdLike;
  if (indices_ok && (with_block > 0 || threshold_claimed)) {
    if (!layout.complete) {
      if (threshold_claimed) {
        add("threshold-like hint but restrictions lack block/rank");
      }
    } else if (BlocksWellFormed(inst, layout)) {
      for (const auto& p : inst.gamma) {
        if (!PairIsSuffixUnion(inst, layout, p)) {
          add("suffix property violated by " + PairName(p));
        }
      }
    }
  }
  return report;
}

AdviceInstance Normalize(const AdviceInstance& inst) {
  AdviceInstance out = inst;
  out.gamma.clear();
  for (const auto& p : inst.gamma) {
    bool dominated = false;
    for (const auto& q : inst.gamma) {
      if (&p == &q || q.resource != p.resource) continue;
      if (q.requires_set != p.requires_set &&
          IsSubset(q.requires_set, p.requires_set)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    if (std::find(out.gamma.begin(), out.gamma.end(), p) != out.gamma.end()) {
      continue;
    }
    out.gamma.push_back(p);
  }
  return out;
}

bool HasUnitCosts(const AdviceInstance& inst) {
  return std::all_of(
      inst.restrictions.begin(), inst.restrictions.end(),
      [](const Restriction& r) { return r.cost == Cost::FromUnits(1); });
}

AdviceInstance WithGamma(const AdviceInstance& inst,
                         IncompatibilitySet gamma) {
  AdviceInstance out = inst;
  out.gamma = std::move(gamma);
  return out;
}

}  // namespace match_advice
