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

#ifndef MATCH_ADVICE_ERRORS_H_
#define MATCH_ADVICE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace match_advice {

// Root of every error thrown by the library. `kind()` is a stable,
// machine-readable tag used by the CLI when it reports errors as JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Node index, restriction id or block index outside its valid range.
class IndexError : public Error {
 public:
  explicit IndexError(const std::string& message)
      : Error("index_out_of_range", message) {}
};

// A matching handed to an algorithm that requires a maximum matching is not
// one (or is not even a matching of the graph).
class MatchingError : public Error {
 public:
  explicit MatchingError(const std::string& message)
      : Error("invalid_matching", message) {}
};

class EnumerationBudgetExceeded : public Error {
 public:
  explicit EnumerationBudgetExceeded(const std::string& message)
      : Error("enumeration_budget_exceeded", message) {}
};

// Size guard of an exponential oracle (brute force, exhaustive search).
class GuardError : public Error {
 public:
  explicit GuardError(const std::string& message)
      : Error("guard_violation", message) {}
};

// Precondition of an operation is not met by otherwise valid input.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error("precondition", message) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& message)
      : Error("solver", message) {}
};

// Instance failed validation; carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error("validation", Join(violations)),
        violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string out = "instance validation failed";
    for (const auto& s : v) out += "; " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

// Malformed input file. `location` is a byte offset (JSON) or line number
// (CSV), whichever the format reports.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t location)
      : Error("parse", message), location_(location) {}
  std::size_t location() const { return location_; }

 private:
  std::size_t location_;
};

}  // namespace match_advice

#endif  // MATCH_ADVICE_ERRORS_H_
