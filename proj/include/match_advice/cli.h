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


#ifndef MATCH_ADVICE_CLI_H_
#define MATCH_ADVICE_CLI_H_

#include <ostream>

namespace match_advice {

// Runs the match_advisor command line. Returns 0 on success, 1 on
// validation, solver or input errors and 2 on usage errors. Errors are
// written to `err` as a single JSON object:
//   {"error": kind, "message": text[, "location": n][, "violations": [...]]}
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace match_advice

#endif  // MATCH_ADVICE_CLI_H_
