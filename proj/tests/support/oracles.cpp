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

#include "oracles.hpp"

#include <algorithm>
#include <vector>

namespace sessprog::testing {

namespace {

// Process-variable substitution ignoring names entirely: the measure does
// not look at names, so capture is irrelevant here.
Proc plug(const Proc& p, const std::string& x, const Proc& q) {
  if (auto* v = as<ProcVar>(p)) return v->name == x ? q : p;
  if (auto* i = as<Input>(p)) return proc::input(i->subject, i->binder, plug(i->body, x, q));
  if (auto* o = as<Output>(p)) return proc::output(o->subject, o->payload, plug(o->body, x, q));
  if (auto* par = as<Parallel>(p)) {
    return proc::par(plug(par->left, x, q), plug(par->right, x, q));
  }
  if (auto* r = as<Restriction>(p)) {
    return proc::restrict(r->channel, r->positive, r->negative, plug(r->body, x, q));
  }
  if (auto* r = as<Recursion>(p)) {
    if (r->var == x) return p;
    return proc::rec(r->index, r->var, plug(r->body, x, q));
  }
  return p;
}

struct Unfolder {
  std::uint64_t budget;
  std::uint64_t visited = 0;
  bool exhausted = false;

  bool tick() {
    if (++visited > budget) exhausted = true;
    return !exhausted;
  }

  MeasureValue e(const Proc& p) {
    if (!tick()) return 0;
    if (auto* i = as<Input>(p)) return 1 + e(i->body);
    if (auto* o = as<Output>(p)) return 1 + e(o->body);
    if (auto* par = as<Parallel>(p)) return e(par->left) + e(par->right);
    if (auto* r = as<Restriction>(p)) return e(r->body);
    if (auto* r = as<Recursion>(p)) {
      if (r->index.is_infinite()) throw InfiniteIndex("unfolded_emeasure: infinite index");
      if (r->index.is_zero()) return 0;
      Proc next = proc::rec(r->index.predecessor(), r->var, r->body);
      return 1 + e(plug(r->body, r->var, next));
    }
    return 0;
  }

  MeasureValue v(const Proc& p, const std::string& x) {
    if (!tick()) return 0;
    if (auto* pv = as<ProcVar>(p)) return pv->name == x ? 1 : 0;
    if (auto* i = as<Input>(p)) return v(i->body, x);
    if (auto* o = as<Output>(p)) return v(o->body, x);
    if (auto* par = as<Parallel>(p)) return v(par->left, x) + v(par->right, x);
    if (auto* r = as<Restriction>(p)) return v(r->body, x);
    if (auto* r = as<Recursion>(p)) {
      if (r->index.is_infinite()) throw InfiniteIndex("unfolded_vcount: infinite index");
      if (r->var == x || r->index.is_zero()) return 0;
      Proc next = proc::rec(r->index.predecessor(), r->var, r->body);
      return v(plug(r->body, r->var, next), x);
    }
    return 0;
  }
};

struct Enumerator {
  std::vector<std::string> channels;  // restriction binders above
  std::vector<std::string> vars;      // input binders above
  std::set<Name> out;

  void name(const Name& n) {
    const auto& scope = n.is_endpoint() ? channels : vars;
    if (std::find(scope.begin(), scope.end(), n.id) == scope.end()) out.insert(n);
  }

  void walk(const Proc& p) {
    if (auto* i = as<Input>(p)) {
      name(i->subject);
      vars.push_back(i->binder);
      walk(i->body);
      vars.pop_back();
    } else if (auto* o = as<Output>(p)) {
      name(o->subject);
      if (auto* n = std::get_if<Name>(&o->payload)) name(*n);
      walk(o->body);
    } else if (auto* par = as<Parallel>(p)) {
      walk(par->left);
      walk(par->right);
    } else if (auto* r = as<Restriction>(p)) {
      channels.push_back(r->channel);
      walk(r->body);
      channels.pop_back();
    } else if (auto* r = as<Recursion>(p)) {
      walk(r->body);
    }
  }
};

}  // namespace

std::optional<MeasureValue> unfolded_emeasure(const Proc& p, std::uint64_t budget) {
  Unfolder u{budget};
  MeasureValue r = u.e(p);
  if (u.exhausted) return std::nullopt;
  return r;
}

std::optional<MeasureValue> unfolded_vcount(const Proc& p, const std::string& x,
                                            std::uint64_t budget) {
  Unfolder u{budget};
  MeasureValue r = u.v(p, x);
  if (u.exhausted) return std::nullopt;
  return r;
}

MeasureValue geometric_loop(const MeasureValue& m, std::uint64_t n) {
  MeasureValue sum = 0;
  MeasureValue power = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    sum += power;
    power *= m;
  }
  return sum;
}

std::set<Name> enumerate_free_names(const Proc& p) {
  Enumerator e;
  e.walk(p);
  return e.out;
}

}  // namespace sessprog::testing
