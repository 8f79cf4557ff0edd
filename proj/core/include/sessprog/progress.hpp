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

// Progress: a static verdict from typing the 0-approximant, and a dynamic
// oracle that checks the definition directly on a finite approximant.
//
// A process has progress when, for every reachable  new ã (π.P' | Q)  with
// π a prefix on a^p, the residual Q can reach a state offering the
// complementary prefix on a^p̄ without re-binding a.

#ifndef SESSPROG_PROGRESS_HPP_
#define SESSPROG_PROGRESS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sessprog/ast.hpp"
#include "sessprog/semantics.hpp"
#include "sessprog/typecheck.hpp"

namespace sessprog {

enum class ProgressStatus { kVerifiedStatic, kViolatedDynamic, kHoldsDynamicAtBound, kUnknown };

const char* to_string(ProgressStatus s);

class NotClosed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProgressViolation {
  std::size_t state;   // index into the explored graph
  std::size_t thread;  // thread of that state whose prefix is never matched
  Name endpoint;
  bool output;  // the stuck prefix is an output
  std::vector<CanonState> trace;  // root first, ending at `state`
  std::vector<RedexLabel> labels;  // labels[i] leads from trace[i] to trace[i + 1]
};

struct ProgressVerdict {
  ProgressStatus status = ProgressStatus::kUnknown;
  std::optional<Verdict> typing;  // static check only
  std::optional<ProgressViolation> violation;
  std::size_t states_explored = 0;
  bool truncated = false;
};

// Types ⌊p⌋0 at judgment index 0. Accepting yields kVerifiedStatic,
// anything else kUnknown. Throws NotUserProcess or NotClosed.
ProgressVerdict verify_static(const Proc& p);

constexpr std::size_t kDefaultMaxStates = 100000;

// Explores ⌊p⌋ι (inf indices become ι, finite ones are kept) and checks
// every reachable top-level prefix. Throws NotClosed. When the state bound
// is hit without finding a violation the status is kUnknown and
// `truncated` is set.
ProgressVerdict oracle_dynamic(const Proc& p, std::uint64_t iota,
                               std::size_t max_states = kDefaultMaxStates);

// Every thread is headed by rec[0].
bool normal_form_shape(const CanonState& s);

}  // namespace sessprog

#endif  // SESSPROG_PROGRESS_HPP_
