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

// The special agent's restrictions, their costs, and the incompatibility set
// that says which restriction sets unlock which resources.

#ifndef MATCH_ADVICE_ADVICE_H_
#define MATCH_ADVICE_ADVICE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "match_advice/bigraph.h"

namespace match_advice {

// Exact non-negative decimal with six fractional digits, stored scaled.
class Cost {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Cost() = default;
  static constexpr Cost FromUnits(std::int64_t units) {
    return Cost(units * kScale);
  }
  static constexpr Cost FromScaled(std::int64_t scaled) { return Cost(scaled); }
  // Accepts "12", "0.5", "3.250". Throws ParseError on anything else,
  // including more than six fractional digits and negative values.
  static Cost Parse(std::string_view text);

  std::int64_t scaled() const { return scaled_; }
  bool IsInteger() const { return scaled_ % kScale == 0; }
  std::int64_t units() const { return scaled_ / kScale; }  // truncating
  double ToDouble() const {
    return static_cast<double>(scaled_) / static_cast<double>(kScale);
  }
  // Shortest exact decimal form ("4", "1.5").
  std::string ToString() const;

  friend constexpr Cost operator+(Cost a, Cost b) {
    return Cost(a.scaled_ + b.scaled_);
  }
  Cost& operator+=(Cost other) {
    scaled_ += other.scaled_;
    return *this;
  }
  friend constexpr auto operator<=>(Cost, Cost) = default;

 private:
  constexpr explicit Cost(std::int64_t scaled) : scaled_(scaled) {}
  std::int64_t scaled_ = 0;
};

struct Restriction {
  int id = 0;
  Cost cost = Cost::FromUnits(1);
  // Threshold-like instances: attribute block and position 1..t(block)
  // within it. A pair that contains rank s of a block contains every rank
  // above s as well, so rank t is the first level relaxed.
  std::optional<int> block;
  std::optional<int> rank;
  std::string name;  // display only

  friend bool operator==(const Restriction&, const Restriction&) = default;
};

// Restriction ids, sorted and unique.
using RestrictionSet = std::vector<int>;

RestrictionSet MakeRestrictionSet(std::vector<int> ids);

// (y, R'): removing all of R' makes resource y compatible.
struct IncompatibilityPair {
  int resource = 0;
  RestrictionSet requires_set;

  friend bool operator==(const IncompatibilityPair&,
                         const IncompatibilityPair&) = default;
};

using IncompatibilitySet = std::vector<IncompatibilityPair>;

enum class IncompatibilityType {
  kSingleChoiceSingleRestriction,
  kMultiChoiceSingleRestriction,
  kSingleChoiceMultiRestriction,
  kMultiChoiceMultiRestriction,
  kThresholdLike,
};

const char* IncompatibilityTypeName(IncompatibilityType type);
// Inverse of IncompatibilityTypeName; nullopt for unknown names.
std::optional<IncompatibilityType> ParseIncompatibilityType(
    std::string_view name);

struct AdviceInstance {
  BipartiteGraph graph;
  int x_star = 0;
  std::vector<Restriction> restrictions;  // restrictions[i].id == i
  IncompatibilitySet gamma;
  std::optional<IncompatibilityType> type_hint;

  friend bool operator==(const AdviceInstance&,
                         const AdviceInstance&) = default;
};

// Graph with {x*, y} added for every y that has a pair (y, R') with R' a
// subset of `relaxed`. Throws IndexError on an unknown restriction id.
BipartiteGraph ApplyRelaxation(const AdviceInstance& inst,
                               std::span<const int> relaxed);

// Resources that become compatible under `relaxed` (sorted, unique).
std::vector<int> UnlockedResources(const AdviceInstance& inst,
                                   std::span<const int> relaxed);

// Sum of member costs. Throws IndexError on an unknown id.
Cost RelaxationCost(const AdviceInstance& inst, std::span<const int> relaxed);

// ThresholdLike when every restriction carries a block and rank and every
// pair is a union of per-block suffixes; otherwise by pair counts per
// resource and pair sizes. Throws ValidationError when some pair is
// dominated by another pair for the same resource.
IncompatibilityType Classify(const AdviceInstance& inst);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks index ranges, positive costs, dense ids, incompatibility of every
// listed resource, minimality of pairs, well-formed blocks, no mixing of
// block and non-block restrictions, and the suffix property when blocks are
// present or the hint claims threshold-like.
ValidationReport ValidateInstance(const AdviceInstance& inst);

// Copy of inst with dominated and duplicate pairs removed.
AdviceInstance Normalize(const AdviceInstance& inst);

// True when every restriction costs exactly 1.
bool HasUnitCosts(const AdviceInstance& inst);

// Instance with gamma replaced; everything else shared.
AdviceInstance WithGamma(const AdviceInstance& inst, IncompatibilitySet gamma);

}  // namespace match_advice

#endif  // MATCH_ADVICE_ADVICE_H_
