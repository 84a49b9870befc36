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

#include "match_advice/rational.h"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace match_advice {
namespace {

using u128 = unsigned __int128;

Rational Reduce(u128 num, u128 den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  u128 a = num, b = den;
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr u128 kMax = std::numeric_limits<std::uint64_t>::max();
  if (num > kMax || den > kMax) {
    throw std::overflow_error("rational: 64-bit overflow");
  }
  return Rational(static_cast<std::uint64_t>(num),
                  static_cast<std::uint64_t>(den));
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::ToString() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Reduce(u128{a.num_} * b.den_ + u128{b.num_} * a.den_,
                u128{a.den_} * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Reduce(u128{a.num_} * b.den_, u128{a.den_} * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return u128{a.num_} * b.den_ <=> u128{b.num_} * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

}  // namespace match_advice
