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

// Well-formedness, unfolding, obligation/capability and duality of
// priority-annotated session types.

#ifndef SESSPROG_TYPES_HPP_
#define SESSPROG_TYPES_HPP_

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sessprog/ast.hpp"

namespace sessprog {

// Σ: type variable -> priority.
using TypeVarEnv = std::map<std::string, Priority>;

class TypeOpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CannotUnfold : public TypeOpError {
 public:
  using TypeOpError::TypeOpError;
};
class UnboundTypeVar : public TypeOpError {
 public:
  using TypeOpError::TypeOpError;
};
class NoAction : public TypeOpError {
 public:
  using TypeOpError::TypeOpError;
};
class DepthExceeded : public TypeOpError {
 public:
  using TypeOpError::TypeOpError;
};

struct WellFormedReport {
  bool ok = true;
  std::string message;
  Type offending;  // null when ok
};

// Contractive, stratified, closed up to `allowed_free`, base sorts only
// in payload position (or at the root) and no written infinite priority.
WellFormedReport well_formed(const Type& t, const std::set<std::string>& allowed_free = {});

// rec[i+1] v.B -> B[rec[i] v.B / v]; inf stays inf.
Type unfold(const Type& t);

Priority obligation(const TypeVarEnv& sigma, const Type& t);
Priority capability(const Type& t);

// Swaps ? and ! and each priority pair; payloads are kept.
Type syntactic_dual(const Type& t);

struct DualityResult {
  bool ok = true;
  // Positions from the root to the first mismatch, e.g. "cont.body.payload".
  std::string path;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Duality without unfolding.
DualityResult dual_strict(const Type& t, const Type& s);

constexpr std::size_t kDefaultDualityBudget = 10000;

// Duality closed under unfolding of either side. Throws DepthExceeded when
// more than `budget` pairs are visited.
bool dual_full(const Type& t, const Type& s, std::size_t budget = kDefaultDualityBudget);

// Alpha-invariant serialization: equal keys iff alpha-equivalent.
std::string type_key(const Type& t);
bool type_equal(const Type& a, const Type& b);

// Every rec[inf] becomes rec[index].
Type type_approximant(const Type& t, Index index);
// Every recursion index in `a` is <= the corresponding one in `b`.
bool type_approx_leq(const Type& a, const Type& b);
bool has_infinite_index(const Type& t);
bool has_finite_index(const Type& t);

}  // namespace sessprog

#endif  // SESSPROG_TYPES_HPP_
