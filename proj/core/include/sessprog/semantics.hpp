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

// Reduction semantics over canonical states.
//
// A canonical state is a process in the shape  new c1 ... new ck (T1 | ... | Tn)
// where every thread Ti is Idle-free and headed by a prefix, a recursion or
// a process variable. Canonicalization applies the structural congruence
// laws: parallel composition is flattened and sorted, idle components are
// dropped and restrictions are hoisted to the top (renaming on clashes).
// The state key is a serialization that is invariant under renaming of
// bound names, so two states are identified iff their keys coincide.

#ifndef SESSPROG_SEMANTICS_HPP_
#define SESSPROG_SEMANTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sessprog/ast.hpp"

namespace sessprog {

struct ChannelDecl {
  std::string name;
  Type positive;  // both null for an unannotated restriction
  Type negative;
};

struct CanonState {
  std::vector<ChannelDecl> channels;  // in key order
  std::vector<Proc> threads;          // sorted by key
  std::string key;

  bool operator==(const CanonState& o) const { return key == o.key; }
};

CanonState canonicalize(const Proc& p);
Proc to_process(const CanonState& s);
std::uint64_t state_hash(const CanonState& s);  // FNV-1a of the key

struct RedexLabel {
  enum class Kind { kComm, kRec };
  Kind kind = Kind::kComm;
  std::string channel;           // kComm: the session channel
  std::optional<Value> payload;  // kComm only
  std::string rec_var;           // kRec: the unfolded process variable
  std::vector<std::size_t> threads;  // output thread first for kComm
};

struct Transition {
  RedexLabel label;
  CanonState target;
};

// All one-step successors, in a fixed order: communications by (output
// thread, input thread), then unfoldings by thread.
std::vector<Transition> step(const CanonState& s);
bool is_normal_form(const CanonState& s);

struct StateGraph {
  struct Edge {
    RedexLabel label;
    std::size_t target;
  };
  std::vector<CanonState> states;  // BFS order, states[0] is the root
  std::vector<std::vector<Edge>> edges;
  // BFS tree: parent state and the edge index within edges[parent].
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent;
  bool truncated = false;

  // Edges from the root to `state` along the BFS tree.
  std::vector<std::pair<std::size_t, RedexLabel>> path_to(std::size_t state) const;
};

StateGraph reachable(const CanonState& s, std::size_t max_states);

class NotUserProcess : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All recursion indices (in the process and its annotations) are inf.
bool is_user_process(const Proc& p);
// No recursion index (in the process and its annotations) is inf.
bool is_finite_process(const Proc& p);

// ⌊p⌋ι. Throws NotUserProcess when a finite index occurs in p.
Proc approximant(const Proc& p, Index index);
// Replaces inf indices only; finite ones are left unchanged.
Proc approximant_lenient(const Proc& p, Index index);

// p ⊑ q: same shape up to renaming of bound names, every recursion index
// of p (also inside annotations) <= the corresponding index of q.
bool approx_leq(const Proc& p, const Proc& q);
// Lifts ⊑ to states, matching threads and top-level channels.
bool approx_leq_state(const CanonState& p, const CanonState& q);

// Given a reduction sequence trace[0] -> ... -> trace[k] and a start state
// with start ⊑ trace[0], finds start = q0 -> ... -> qk with qi ⊑ trace[i].
std::optional<std::vector<CanonState>> simulate_trace(const CanonState& start,
                                                      const std::vector<CanonState>& trace);

}  // namespace sessprog

#endif  // SESSPROG_SEMANTICS_HPP_
