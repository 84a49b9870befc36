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

#ifndef MATCH_ADVICE_PARALLEL_H_
#define MATCH_ADVICE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace match_advice {

// Worker cap: MATCH_ADVISOR_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
std::size_t WorkerCount();

// Calls body(i) for every i in [0, n), spread over up to `workers` threads
// in contiguous chunks. body must only write to state owned by index i.
// The first exception thrown by any body is rethrown after all workers join.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body,
                 std::size_t workers = WorkerCount());

}  // namespace match_advice

#endif  // MATCH_ADVICE_PARALLEL_H_
