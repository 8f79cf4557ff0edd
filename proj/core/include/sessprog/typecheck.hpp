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

// The typing judgment  Σ; Γ ⊢ι Δ ▹ P  and the priority constraint solver.
//
// Checking is syntax-directed. Priorities may be symbolic, so instead of
// deciding the inequalities in the premises of the prefix rules the
// checker collects them and solve() decides the resulting system over the
// naturals. Bindings of type end, and of a base sort, are discarded
// wherever a rule asks for an exact environment.

#ifndef SESSPROG_TYPECHECK_HPP_
#define SESSPROG_TYPECHECK_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sessprog/ast.hpp"
#include "sessprog/types.hpp"

namespace sessprog {

// Δ. Base-sort bindings are not linear.
using NameEnv = std::map<Name, Type>;
// Γ. Each entry maps names to type variables.
using ProcEnv = std::map<std::string, NameEnv>;

struct Constraint {
  Priority lhs;
  Priority rhs;  // lhs < rhs
  SourcePos pos;
  std::string rule;
};
using ConstraintSet = std::vector<Constraint>;

enum class DiagnosticKind {
  kLinearityViolation,
  kUnusedLinearName,
  kSubjectTypeMismatch,
  kRecShapeMismatch,
  kDualityFailure,
  kUnsatisfiableConstraints,
  kUnboundName,
  kIllFormedType,
  kNotClosed,
};

const char* to_string(DiagnosticKind k);

struct Diagnostic {
  DiagnosticKind kind;
  std::string rule;
  SourcePos pos;
  std::string message;
};

struct CheckResult {
  bool ok = true;
  ConstraintSet constraints;
  std::vector<Diagnostic> diagnostics;
};

// Checks p under the given environments at judgment index `index`.
// Restrictions use strict duality when index is 0 and full duality
// otherwise. Constraints are returned unsolved.
CheckResult check(const TypeVarEnv& sigma, const ProcEnv& gamma, const NameEnv& delta,
                  const Proc& p, Index index);

struct SplitResult {
  std::optional<Diagnostic> error;
  NameEnv left;
  NameEnv right;
};

// Distributes Δ between the two sides of a parallel composition according
// to the free names of each side (a free process variable X stands for
// the domain of Γ(X)).
SplitResult split_env(const NameEnv& delta, const Proc& left, const Proc& right,
                      const ProcEnv& gamma);

using Assignment = std::map<std::string, std::uint64_t>;

struct SolveResult {
  bool ok = true;
  Assignment assignment;          // minimal solution when ok
  std::vector<Constraint> witness;  // contradicting chain otherwise
};

SolveResult solve(const ConstraintSet& cs);
// Every constraint holds under the assignment (unassigned variables fail).
bool satisfies(const ConstraintSet& cs, const Assignment& assignment);

struct Verdict {
  bool ok = true;
  CheckResult check;
  SolveResult solution;
  std::vector<Diagnostic> diagnostics;  // check diagnostics, then solver
};

// Type-checks a closed process in empty environments and solves the
// emitted constraints.
Verdict check_closed(const Proc& p, Index index);

// One-step context reductions: unfold a recursive binding, or consume a
// pair of matching actions on peer endpoints.
std::vector<NameEnv> context_reduce(const NameEnv& delta);
// Peer endpoints present in delta have dual types.
bool balanced(const NameEnv& delta);

}  // namespace sessprog

#endif  // SESSPROG_TYPECHECK_HPP_
