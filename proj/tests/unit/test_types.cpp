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
#include "sessprog/parser.hpp"
#include "sessprog/pretty.hpp"
#include "sessprog/types.hpp"

using namespace sessprog;
using namespace sessprog::testing;

namespace {

Type T(const char* s) { return parse_type(s); }
Priority var(const char* s) { return Priority::variable(s); }

// T = ![α,β]int.rec[n] t.![α,β]int.t   S = rec[n] t.?[β,α]int.t
std::pair<Type, Type> counterexample(const std::string& n) {
  return {T(("![alpha,beta] int . rec[" + n + "] t. ![alpha,beta] int . t").c_str()),
          T(("rec[" + n + "] t. ?[beta,alpha] int . t").c_str())};
}

}  // namespace

TEST_SUITE("types") {

TEST_CASE("well-formedness") {
  CHECK(!well_formed(T("rec[inf] t.t")).ok);
  CHECK(!well_formed(T("rec[inf] t. rec[1] u. t")).ok);
  CHECK(well_formed(T("?[a,b] end . end")).ok);
  CHECK(well_formed(T("?[a,b] (rec[inf] t. ?[c,d] end . t) . end")).ok);
  auto open_payload = well_formed(T("rec[inf] t. ?[a,b] t . end"));
  CHECK(!open_payload.ok);
  CHECK(!open_payload.message.empty());
  CHECK(!well_formed(T("t")).ok);
  CHECK(well_formed(T("t"), {"t"}).ok);
  CHECK(!well_formed(T("?[a,b] end . int")).ok);
}

TEST_CASE("unfold") {
  Type r = T("rec[inf] t. ?[a,b] end . t");
  CHECK(type_equal(unfold(r), T("?[a,b] end . rec[inf] t. ?[a,b] end . t")));
  Type one = unfold(T("rec[1] t. ![a,b] int . t"));
  auto* act = as<ActionType>(one);
  REQUIRE(act);
  auto* inner = as<RecType>(act->continuation);
  REQUIRE(inner);
  CHECK(inner->index == Index::finite(0));
  CHECK_THROWS_AS(unfold(T("rec[0] t. ?[a,b] end . t")), CannotUnfold);
  CHECK_THROWS_AS(unfold(T("end")), CannotUnfold);
}

TEST_CASE("obligation") {
  CHECK(obligation({}, T("end")).is_infinite());
  CHECK(obligation({}, ty::base()).is_infinite());
  CHECK(obligation({}, T("?[alpha,beta] int . end")) == var("alpha"));
  TypeVarEnv sigma{{"t", var("alpha")}};
  CHECK(obligation(sigma, T("rec[0] u. ?[gamma,delta] end . u")) == var("gamma"));
  CHECK(obligation(sigma, T("t")) == var("alpha"));
  CHECK_THROWS_AS(obligation({}, T("t")), UnboundTypeVar);
}

TEST_CASE("obligation is preserved by unfolding") {
  Rng rng(21);
  int tested = 0;
  for (int i = 0; i < 2000 && tested < 300; ++i) {
    Type t = random_type(rng, 6, true);
    auto* r = as<RecType>(t);
    if (!r || r->index.is_zero() || !as<ActionType>(r->body)) continue;
    ++tested;
    CHECK(obligation({}, t) == obligation({}, unfold(t)));
  }
  CHECK(tested >= 100);
}

TEST_CASE("capability") {
  CHECK(capability(T("?[alpha,beta] int . end")) == var("beta"));
  CHECK(capability(T("![beta,alpha] int . end")) == var("alpha"));
  CHECK(capability(T("rec[2] t. ![1,3] int . t")) == Priority::constant(3));
  CHECK_THROWS_AS(capability(T("end")), NoAction);
  CHECK_THROWS_AS(capability(T("t")), NoAction);
}

TEST_CASE("capability of a type is the obligation of its dual") {
  Rng rng(22);
  int tested = 0;
  for (int i = 0; i < 1000; ++i) {
    Type t = random_type(rng, 6, true);
    Type s = syntactic_dual(t);
    REQUIRE(dual_strict(t, s).ok);
    try {
      Priority c = capability(t);
      ++tested;
      CHECK(c == obligation({}, s));
    } catch (const NoAction&) {
    }
  }
  CHECK(tested > 100);
}

TEST_CASE("strict duality") {
  CHECK(dual_strict(T("end"), T("end")).ok);
  CHECK(dual_strict(T("?[alpha,beta] int . end"), T("![beta,alpha] int . end")).ok);
  auto bad = dual_strict(T("?[alpha,beta] int . end"), T("![alpha,beta] int . end"));
  CHECK(!bad.ok);
  CHECK(bad.path == "root");
  CHECK(!bad.reason.empty());
  auto deep = dual_strict(T("?[a,b] int . ![c,d] int . end"), T("![b,a] int . ?[c,d] int . end"));
  CHECK(!deep.ok);
  CHECK(deep.path == "cont");
  CHECK(dual_strict(T("rec[2] t. ?[a,b] int . t"), T("rec[2] u. ![b,a] int . u")).ok);
  CHECK(!dual_strict(T("rec[2] t. ?[a,b] int . t"), T("rec[1] u. ![b,a] int . u")).ok);
  CHECK(!dual_strict(T("?[a,b] int . end"), T("![b,a] end . end")).ok);
}

TEST_CASE("full duality with unfolding") {
  Type t = T("rec[inf] t. ?[alpha,beta] int . t");
  Type s = T("![beta,alpha] int . rec[inf] t. ![beta,alpha] int . t");
  CHECK(dual_full(t, s));
  CHECK(dual_full(s, t));
  CHECK(!dual_strict(t, s).ok);
  for (std::string n : {"0", "1", "2", "3", "4"}) {
    auto [a, b] = counterexample(n);
    CHECK(!dual_strict(a, b).ok);
  }
  auto [a, b] = counterexample("inf");
  CHECK(dual_full(a, b));
  CHECK(!dual_full(T("?[a,b] int . end"), T("![a,b] int . end")));
}

TEST_CASE("syntactic dual is strictly dual and involutive") {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    Type t = random_type(rng, 6, true);
    INFO(pretty(t));
    REQUIRE(well_formed(t).ok);
    CHECK(dual_strict(t, syntactic_dual(t)).ok);
    CHECK(dual_strict(syntactic_dual(t), t).ok);
    CHECK(type_equal(syntactic_dual(syntactic_dual(t)), t));
  }
}

TEST_CASE("full duality contains strict duality") {
  Rng rng(24);
  int strict = 0;
  for (int i = 0; i < 2000; ++i) {
    Type t = random_type(rng, 5, true);
    Type s = i % 2 ? syntactic_dual(t) : random_type(rng, 5, true);
    bool st = dual_strict(t, s).ok;
    if (st) {
      ++strict;
      CHECK(dual_full(t, s));
    }
    CHECK(dual_strict(t, s).ok == dual_strict(s, t).ok);
  }
  CHECK(strict >= 1000);
}

TEST_CASE("full duality is closed under unfolding") {
  Rng rng(25);
  int tested = 0;
  for (int i = 0; i < 3000; ++i) {
    Type t = random_type(rng, 5, true);
    Type s = syntactic_dual(t);
    auto* r = as<RecType>(s);
    if (!r || r->index.is_zero()) continue;
    ++tested;
    REQUIRE(dual_full(t, s));
    CHECK(dual_full(t, unfold(s)));
    CHECK(dual_full(unfold(s), t));
  }
  CHECK(tested > 100);
}

TEST_CASE("duality budget") {
  Type t = T("rec[inf] t. ?[a,b] int . ?[a,b] int . ?[a,b] int . t");
  Type s = T("rec[inf] u. ![b,a] int . ![b,a] int . u");
  CHECK(dual_full(t, s));
  CHECK(!dual_full(t, T("rec[inf] u. ![b,a] int . ![a,b] int . u")));
  CHECK_THROWS_AS(dual_full(t, s, 1), DepthExceeded);
}

TEST_CASE("type approximants") {
  Type t = T("rec[inf] t. ?[a,b] (rec[inf] u. ![c,d] int . u) . t");
  Type a = type_approximant(t, Index::finite(2));
  CHECK(!has_infinite_index(a));
  CHECK(type_approx_leq(a, t));
  CHECK(!type_approx_leq(t, a));
  CHECK(has_finite_index(a));
}

}  // TEST_SUITE
