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

#include <benchmark/benchmark.h>

#include <string>

#include "sessprog/measure.hpp"
#include "sessprog/parser.hpp"
#include "sessprog/pretty.hpp"
#include "sessprog/progress.hpp"
#include "sessprog/semantics.hpp"
#include "sessprog/typecheck.hpp"
#include "sessprog/types.hpp"

using namespace sessprog;

namespace {

const char* kForwarder =
    "new a : rec[inf] t. ![beta,alpha] end . t . new b : rec[inf] u. ![gamma,delta] end . u . "
    "(rec[inf] X. a-?(x). b+!x. X | rec[inf] Y. new c. a+!c+. Y | rec[inf] Z. b-?(y). Z)";

// k stages passing one integer along a line of sessions.
std::string pipeline(int k) {
  std::string text;
  for (int i = 0; i < k; ++i) {
    std::string c = "c" + std::to_string(i);
    text += "new " + c + " : rec[inf] t. ![p" + std::to_string(i) + ",q" + std::to_string(i) +
            "] int . t . ";
  }
  std::string body = "rec[inf] S. c0+!1. S";
  for (int i = 1; i < k; ++i) {
    body += " | rec[inf] F" + std::to_string(i) + ". c" + std::to_string(i - 1) + "-?(x). c" +
            std::to_string(i) + "+!x. F" + std::to_string(i);
  }
  body += " | rec[inf] E. c" + std::to_string(k - 1) + "-?(y). E";
  return text + "(" + body + ")";
}

void BM_Parse(benchmark::State& state) {
  std::string text = pipeline(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parse_process(text));
}
BENCHMARK(BM_Parse)->RangeMultiplier(2)->Range(2, 32);

void BM_CheckPipeline(benchmark::State& state) {
  Proc p = parse_process(pipeline(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(check_closed(p, Index::infinity()));
}
BENCHMARK(BM_CheckPipeline)->RangeMultiplier(2)->Range(2, 32);

void BM_Solve(benchmark::State& state) {
  ConstraintSet cs;
  for (int i = 0; i + 1 < state.range(0); ++i) {
    cs.push_back({Priority::variable("v" + std::to_string(i)),
                  Priority::variable("v" + std::to_string(i + 1)), {}, "bench"});
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve(cs));
}
BENCHMARK(BM_Solve)->RangeMultiplier(4)->Range(4, 4096);

void BM_DualFull(benchmark::State& state) {
  std::string t = "rec[inf] t.";
  std::string s = "rec[inf] u.";
  for (int i = 0; i < state.range(0); ++i) {
    t += " ?[a,b] int .";
    s += " ![b,a] int .";
  }
  Type tt = parse_type((t + " t").c_str());
  Type ss = parse_type((s + " ![b,a] int . u").c_str());
  for (auto _ : state) benchmark::DoNotOptimize(dual_full(tt, ss));
}
BENCHMARK(BM_DualFull)->RangeMultiplier(2)->Range(1, 32);

void BM_ExploreForwarder(benchmark::State& state) {
  Proc p = approximant(parse_process(kForwarder), Index::finite(state.range(0)));
  for (auto _ : state) {
    StateGraph g = reachable(canonicalize(p), kDefaultMaxStates);
    state.counters["states"] = static_cast<double>(g.states.size());
  }
}
BENCHMARK(BM_ExploreForwarder)->DenseRange(1, 4);

void BM_Oracle(benchmark::State& state) {
  Proc p = parse_process(pipeline(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_dynamic(p, 1));
}
BENCHMARK(BM_Oracle)->DenseRange(2, 4);

void BM_MeasureTower(benchmark::State& state) {
  std::string body = "0";
  for (int i = 0; i < state.range(0); ++i) body += " | X" + std::to_string(i) + " | X" + std::to_string(i);
  std::string text = "(" + body + ")";
  for (int i = static_cast<int>(state.range(0)); i-- > 0;) {
    text = "rec[9] X" + std::to_string(i) + ". " + text;
  }
  Proc p = parse_process(text);
  for (auto _ : state) benchmark::DoNotOptimize(emeasure(p));
}
BENCHMARK(BM_MeasureTower)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
