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

#include "sessprog/measure.hpp"

#include <algorithm>
#include <vector>

#include "sessprog/pretty.hpp"

namespace sessprog {

namespace {

std::uint64_t finite_index(const Recursion& r) {
  if (r.index.is_infinite()) {
    throw InfiniteIndex("measure undefined for rec[inf] " + r.var);
  }
  return r.index.value();
}

// sum_{k<n} m^k
MeasureValue geometric(const MeasureValue& m, std::uint64_t n) {
  if (n == 0) return 0;
  if (m == 0) return 1;
  if (m == 1) return MeasureValue(n);
  // (m^n - 1) / (m - 1)
  MeasureValue power = boost::multiprecision::pow(m, static_cast<unsigned>(n));
  return (power - 1) / (m - 1);
}

}  // namespace

MeasureValue vcount(const Proc& p, const std::string& var) {
  return std::visit(
      [&](const auto& x) -> MeasureValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle>) {
          return 0;
        } else if constexpr (std::is_same_v<T, ProcVar>) {
          return x.name == var ? 1 : 0;
        } else if constexpr (std::is_same_v<T, Input> || std::is_same_v<T, Output> ||
                             std::is_same_v<T, Restriction>) {
          return vcount(x.body, var);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return vcount(x.left, var) + vcount(x.right, var);
        } else {
          std::uint64_t n = finite_index(x);
          if (x.var == var) return 0;
          MeasureValue inner = vcount(x.body, var);
          if (inner == 0) return 0;
          return inner * geometric(vcount(x.body, x.var), n);
        }
      },
      p->node);
}

MeasureValue emeasure(const Proc& p) {
  return std::visit(
      [&](const auto& x) -> MeasureValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle> || std::is_same_v<T, ProcVar>) {
          return 0;
        } else if constexpr (std::is_same_v<T, Input> || std::is_same_v<T, Output>) {
          return 1 + emeasure(x.body);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          return emeasure(x.body);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return emeasure(x.left) + emeasure(x.right);
        } else {
          std::uint64_t n = finite_index(x);
          if (n == 0) return 0;
          return (1 + emeasure(x.body)) * geometric(vcount(x.body, x.var), n);
        }
      },
      p->node);
}

MeasureValue emeasure(const CanonState& s) {
  MeasureValue total = 0;
  for (const auto& t : s.threads) total += emeasure(t);
  return total;
}

DecreaseReport check_decrease(const Proc& p, std::size_t max_states) {
  DecreaseReport report;
  report.initial = emeasure(p);
  report.graph = reachable(canonicalize(p), max_states);
  const StateGraph& g = report.graph;
  report.truncated = g.truncated;
  report.states = g.states.size();
  std::vector<MeasureValue> e;
  e.reserve(g.states.size());
  for (const auto& s : g.states) e.push_back(emeasure(s));
  if (e[0] != report.initial) {
    report.ok = false;
    report.counterexample = DecreaseReport::Counterexample{
        0, 0, {}, report.initial, e[0], "canonicalization changed the measure"};
    return report;
  }
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    for (const auto& edge : g.edges[i]) {
      ++report.edges;
      const MeasureValue& before = e[i];
      const MeasureValue& after = e[edge.target];
      MeasureValue expected =
          before - (edge.label.kind == RedexLabel::Kind::kComm ? 2 : 1);
      if (after != expected) {
        report.ok = false;
        report.counterexample = DecreaseReport::Counterexample{
            i, edge.target, edge.label, before, after,
            std::string(edge.label.kind == RedexLabel::Kind::kComm ? "communication"
                                                                   : "unfolding") +
                " changed E from " + before.str() + " to " + after.str()};
        return report;
      }
    }
  }
  // The graph is acyclic because E strictly decreases, so the longest
  // path follows from a reverse topological sweep. States are in BFS
  // order but edges may point backwards, so sort by measure instead.
  std::vector<std::size_t> order(g.states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e[a] < e[b]; });
  std::vector<std::size_t> longest(g.states.size(), 0);
  for (std::size_t i : order) {
    for (const auto& edge : g.edges[i]) {
      longest[i] = std::max(longest[i], longest[edge.target] + 1);
    }
  }
  report.longest_path = longest[0];
  if (!report.truncated && MeasureValue(report.longest_path) > report.initial) {
    report.ok = false;
    report.counterexample = DecreaseReport::Counterexample{
        0, 0, {}, report.initial, MeasureValue(report.longest_path),
        "a reduction path is longer than the initial measure"};
  }
  return report;
}

}  // namespace sessprog
