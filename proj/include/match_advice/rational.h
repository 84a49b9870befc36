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

#ifndef MATCH_ADVICE_RATIONAL_H_
#define MATCH_ADVICE_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace match_advice {

// Non-negative fraction in lowest terms. Probabilities computed from
// matching counts are ratios of counts, so they are kept exact.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den);  // throws on den == 0

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool IsZero() const { return num_ == 0; }
  std::string ToString() const;  // "num/den"

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace match_advice

#endif  // MATCH_ADVICE_RATIONAL_H_
