// Copyright 2026 The sessprog Authors
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

// Random process generators for property tests.

#ifndef SESSPROG_TESTS_GENERATORS_HPP_
#define SESSPROG_TESTS_GENERATORS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sessprog/ast.hpp"

namespace sessprog::testing {

using Rng = std::mt19937_64;

struct ShapeConfig {
  int max_depth = 6;
  std::uint64_t max_index = 4;
  bool user = false;          // every recursion gets index inf
  int max_nodes = 14;
  bool allow_new = true;
  std::vector<std::string> open_vars;  // process variables that may occur free
};

// Untyped process over the channels a, b, c. Free names are allowed.
Proc random_process(Rng& rng, const ShapeConfig& config);

// Closed, contractive, stratified session type. Priorities are drawn from
// {0..3} and the variables a, b, c; indices from {0..3} and, when
// `allow_inf` holds, inf.
Type random_type(Rng& rng, int depth, bool allow_inf);

struct TypedCase {
  std::string label;
  Proc process;
  Index index;        // judgment index the case is built for
  bool well_typed;    // typable by construction (mutants may still be)
};

// Closed processes built from a global schedule of interactions: every
// thread performs its events in schedule order and event j carries the
// priority variables p<j>, q<j>. When `mutate` is set one thread performs
// two consecutive events on distinct channels in swapped order.
TypedCase schedule_case(Rng& rng, bool mutate);

// source | stage_1 | ... | stage_{k-1} | sink connected by channels
// c1..ck, with c_i+ : rec t. ![i, k+1-i] int . t.
TypedCase pipeline_case(int stages, Index index);

// The forwarder system with S = end.
TypedCase forwarder_case(Index index);

// A corpus of closed well-typed finite processes (pipelines use `index`).
std::vector<TypedCase> typed_corpus(Rng& rng, std::size_t count);
// Closed user processes: well-typed schedules and pipelines plus mutants.
std::vector<TypedCase> user_corpus(Rng& rng, std::size_t count);

}  // namespace sessprog::testing

#endif  // SESSPROG_TESTS_GENERATORS_HPP_
