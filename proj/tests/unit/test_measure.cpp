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

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "sessprog/measure.hpp"
#include "sessprog/parser.hpp"
#include "sessprog/pretty.hpp"
#include "sessprog/semantics.hpp"
#include "sessprog/syntax.hpp"

using namespace sessprog;
using namespace sessprog::testing;

namespace {

Proc P(const char* s) { return parse_process(s); }

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("V") {
  CHECK(vcount(P("X"), "X") == 1);
  CHECK(vcount(P("Y"), "X") == 0);
  CHECK(vcount(P("rec[4] X. (X | X)"), "X") == 0);
  CHECK(vcount(P("rec[3] Y.(0 | X | X)"), "X") == 2);
  CHECK(vcount(P("rec[0] Y.(X | X)"), "X") == 0);
  CHECK(vcount(P("rec[3] Y.(X | Y | Y)"), "X") == 7);
  CHECK(vcount(P("a+!1. X | b-?(x). X"), "X") == 2);
}

TEST_CASE("E") {
  CHECK(emeasure(P("rec[0] X. a+!1. X")) == 0);
  CHECK(emeasure(P("rec[3] X.(rec[6] Y.Y | X)")) == 21);
  CHECK(emeasure(P("rec[6] Y.Y | rec[2] X.(rec[6] Y.Y | X)")) == 20);
  CHECK(emeasure(P("a+!1.0 | a-?(x).0")) == 2);
  CHECK(emeasure(P("new a (a+!1.0 | a-?(x).0)")) == 2);
  CHECK(emeasure(P("0")) == 0);
  CHECK_THROWS_AS(emeasure(P("rec[inf] X.X")), InfiniteIndex);
  CHECK_THROWS_AS(vcount(P("rec[inf] Y.X"), "X"), InfiniteIndex);
}

TEST_CASE("E of the successor of the measure example") {
  auto next = step(canonicalize(P("rec[3] X.(rec[6] Y.Y | X)")));
  REQUIRE(next.size() == 1);
  CHECK(emeasure(next[0].target) == 20);
  auto comm = step(canonicalize(P("a+!1.0 | a-?(x).0")));
  REQUIRE(comm.size() == 1);
  CHECK(emeasure(comm[0].target) == 0);
}

TEST_CASE("big values do not overflow") {
  std::string body = "0";
  std::string text;
  for (int i = 1; i <= 3; ++i) body += " | X" + std::to_string(i) + " | X" + std::to_string(i);
  text = "(" + body + ")";
  for (int i = 3; i >= 1; --i) text = "rec[9] X" + std::to_string(i) + ". " + text;
  MeasureValue e = emeasure(P(text.c_str()));
  CHECK(e > MeasureValue(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("agrees with the unfolding oracle") {
  Rng rng(51);
  int compared = 0;
  for (int i = 0; i < 1000; ++i) {
    ShapeConfig cfg;
    cfg.open_vars = {"X"};
    Proc p = random_process(rng, cfg);
    auto e = unfolded_emeasure(p);
    auto v = unfolded_vcount(p, "X");
    if (!e || !v) continue;
    ++compared;
    INFO(pretty(p));
    CHECK(emeasure(p) == *e);
    CHECK(vcount(p, "X") == *v);
  }
  CHECK(compared > 800);
}

TEST_CASE("closed-form geometric sums") {
  for (int m = 0; m < 6; ++m) {
    for (std::uint64_t n = 0; n < 8; ++n) {
      // V_X(rec[n] Y.(X | Y^m)) = Σ_{k<n} m^k
      std::string body = "X";
      for (int j = 0; j < m; ++j) body += " | Y";
      std::string text = "rec[" + std::to_string(n) + "] Y.(" + body + ")";
      CHECK(vcount(P(text.c_str()), "X") == geometric_loop(m, n));
    }
  }
}

TEST_CASE("substitution identity") {
  Rng rng(52);
  int tested = 0;
  for (int i = 0; i < 1500; ++i) {
    ShapeConfig cfg;
    cfg.open_vars = {"X"};
    cfg.max_depth = 5;
    Proc p = random_process(rng, cfg);
    ShapeConfig qc;
    qc.max_depth = 4;
    qc.max_nodes = 8;
    Proc q = random_process(rng, qc);
    auto r = subst_proc(p, "X", q);
    if (!r) continue;
    ++tested;
    CHECK(emeasure(*r) == emeasure(p) + emeasure(q) * vcount(p, "X"));
  }
  CHECK(tested > 500);
}

TEST_CASE("endpoint substitution does not change the measure") {
  Rng rng(53);
  for (int i = 0; i < 300; ++i) {
    ShapeConfig cfg;
    cfg.open_vars = {"X"};
    Proc p = proc::input(Name::endpoint("a", Polarity::kMinus), "z", random_process(rng, cfg));
    auto body = subst_name(as<Input>(p)->body, "z", Name::endpoint("b", Polarity::kPlus));
    if (!body) continue;
    CHECK(emeasure(*body) == emeasure(as<Input>(p)->body));
    CHECK(vcount(*body, "X") == vcount(as<Input>(p)->body, "X"));
  }
}

TEST_CASE("parallel reassociation does not change the measure") {
  Rng rng(54);
  ShapeConfig cfg;
  cfg.max_depth = 4;
  for (int i = 0; i < 300; ++i) {
    Proc a = random_process(rng, cfg), b = random_process(rng, cfg), c = random_process(rng, cfg);
    CHECK(emeasure(proc::par(proc::par(a, b), c)) == emeasure(proc::par(a, proc::par(b, c))));
    CHECK(emeasure(proc::par(a, b)) == emeasure(proc::par(b, a)));
    CHECK(emeasure(canonicalize(freshen(proc::par(a, b)))) == emeasure(proc::par(a, b)));
  }
}

TEST_CASE("check_decrease") {
  auto fw = check_decrease(approximant(forwarder_case(Index::infinity()).process,
                                       Index::finite(2)), 100000);
  CHECK(fw.ok);
  CHECK(!fw.truncated);
  CHECK(fw.edges > 0);
  CHECK(fw.longest_path <= fw.initial);

  auto vac = check_decrease(P("rec[0] X.X"), 10);
  CHECK(vac.ok);
  CHECK(vac.edges == 0);
  CHECK(vac.longest_path == 0);

  auto ex = check_decrease(P("rec[3] X.(rec[6] Y.Y | X)"), 100000);
  CHECK(ex.ok);
  CHECK(ex.initial == 21);
  CHECK(ex.longest_path == 21);
}

TEST_CASE("every reducible process has a positive measure") {
  Rng rng(55);
  ShapeConfig cfg;
  cfg.max_depth = 5;
  for (int i = 0; i < 500; ++i) {
    CanonState s = canonicalize(freshen(random_process(rng, cfg)));
    if (!step(s).empty()) CHECK(emeasure(s) > 0);
  }
}

}  // TEST_SUITE
