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

// Termination measure for processes with finite recursion indices.
//
//   V_X(X) = 1                V_X(Y) = 0
//   V_X(u?(x).P) = V_X(u!v.P) = V_X(P)
//   V_X(P | Q) = V_X(P) + V_X(Q)
//   V_X(rec[n] X.P) = 0       V_X(rec[n] Y.P) = V_X(P) * sum_{k<n} V_Y(P)^k
//
//   E(X) = 0                  E(u?(x).P) = E(u!v.P) = 1 + E(P)
//   E(P | Q) = E(P) + E(Q)    E(rec[n] X.P) = (1 + E(P)) * sum_{k<n} V_X(P)^k
//
// Idle counts 0 in both and restrictions are transparent.

#ifndef SESSPROG_MEASURE_HPP_
#define SESSPROG_MEASURE_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "sessprog/ast.hpp"
#include "sessprog/semantics.hpp"

namespace sessprog {

using MeasureValue = boost::multiprecision::cpp_int;

class InfiniteIndex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MeasureValue vcount(const Proc& p, const std::string& var);
MeasureValue emeasure(const Proc& p);
MeasureValue emeasure(const CanonState& s);

struct DecreaseReport {
  struct Counterexample {
    std::size_t from;
    std::size_t to;
    RedexLabel label;
    MeasureValue before;
    MeasureValue after;
    std::string message;
  };

  bool ok = true;
  bool truncated = false;
  std::size_t states = 0;
  std::size_t edges = 0;
  MeasureValue initial;
  std::size_t longest_path = 0;  // in steps; only meaningful when !truncated
  std::optional<Counterexample> counterexample;
  StateGraph graph;
};

// Explores the reduction graph of p asserting that E drops by exactly 1
// along unfoldings and by exactly 2 along communications, and that no
// path is longer than E(p).
DecreaseReport check_decrease(const Proc& p, std::size_t max_states);

}  // namespace sessprog

#endif  // SESSPROG_MEASURE_HPP_
