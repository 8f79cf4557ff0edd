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

#include "sessprog/types.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "sessprog/pretty.hpp"
#include "sessprog/syntax.hpp"

namespace sessprog {

namespace {

enum class Slot { kRoot, kPayload, kContinuation };

WellFormedReport bad(const Type& t, std::string msg) {
  return WellFormedReport{false, std::move(msg) + ": " + pretty(t), t};
}

WellFormedReport wf(const Type& t, std::vector<std::string>& bound,
                    const std::set<std::string>& allowed, Slot slot) {
  if (const auto* v = as<TypeVar>(t)) {
    if (std::find(bound.begin(), bound.end(), v->name) == bound.end() &&
        !allowed.count(v->name)) {
      return bad(t, "unbound type variable '" + v->name + "'");
    }
    return {};
  }
  if (as<BaseType>(t)) {
    if (slot == Slot::kContinuation) return bad(t, "base sort used as a session");
    return {};
  }
  if (const auto* a = as<ActionType>(t)) {
    if (a->obligation.is_infinite() || a->capability.is_infinite()) {
      return bad(t, "infinite priority annotation");
    }
    if (!free_type_vars(a->payload).empty()) return bad(t, "payload type is not closed");
    std::vector<std::string> none;
    if (auto r = wf(a->payload, none, {}, Slot::kPayload); !r.ok) return r;
    return wf(a->continuation, bound, allowed, Slot::kContinuation);
  }
  if (const auto* r = as<RecType>(t)) {
    std::vector<std::string> chain;
    Type body = t;
    while (const auto* inner = as<RecType>(body)) {
      chain.push_back(inner->var);
      body = inner->body;
    }
    if (const auto* v = as<TypeVar>(body)) {
      if (std::find(chain.begin(), chain.end(), v->name) != chain.end()) {
        return bad(t, "recursive type is not contractive");
      }
    }
    if (as<BaseType>(body)) return bad(t, "base sort under a recursion");
    bound.push_back(r->var);
    auto res = wf(r->body, bound, allowed, Slot::kContinuation);
    bound.pop_back();
    return res;
  }
  return {};
}

void ser_priority(const Priority& p, std::string& out) {
  switch (p.kind()) {
    case Priority::Kind::kConst:
      out += std::to_string(p.value());
      break;
    case Priority::Kind::kVar:
      out += '\'';
      out += p.name();
      out += '\'';
      break;
    case Priority::Kind::kInfinity:
      out += "oo";
      break;
  }
}

void ser_type(const Type& t, std::vector<std::string>& bound, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EndType>) {
          out += 'e';
        } else if constexpr (std::is_same_v<T, TypeVar>) {
          for (std::size_t i = bound.size(); i-- > 0;) {
            if (bound[i] == x.name) {
              out += '^' + std::to_string(bound.size() - 1 - i);
              return;
            }
          }
          out += "v:" + x.name + ';';
        } else if constexpr (std::is_same_v<T, ActionType>) {
          out += x.direction == Direction::kIn ? "?[" : "![";
          ser_priority(x.obligation, out);
          out += ',';
          ser_priority(x.capability, out);
          out += "](";
          std::vector<std::string> none;
          ser_type(x.payload, none, out);
          out += ").";
          ser_type(x.continuation, bound, out);
        } else if constexpr (std::is_same_v<T, RecType>) {
          out += "r" + to_string(x.index) + ".";
          bound.push_back(x.var);
          ser_type(x.body, bound, out);
          bound.pop_back();
        } else {
          out += "b:" + x.name + ';';
        }
      },
      t->node);
}

std::string key_in(const Type& t, const std::vector<std::string>& env) {
  std::vector<std::string> bound = env;
  std::string out;
  ser_type(t, bound, out);
  return out;
}

// Position of v in env counted from the innermost binder, or -1 when free.
long lookup(const std::vector<std::string>& env, const std::string& v) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (env[i] == v) return static_cast<long>(env.size() - 1 - i);
  }
  return -1;
}

bool vars_aligned(const std::string& a, const std::vector<std::string>& ea, const std::string& b,
                  const std::vector<std::string>& eb) {
  long ia = lookup(ea, a), ib = lookup(eb, b);
  if (ia < 0 && ib < 0) return a == b;
  return ia == ib;
}

bool can_unfold(const Type& t) {
  const auto* r = as<RecType>(t);
  return r && !r->index.is_zero();
}

bool actions_mirror(const ActionType& a, const ActionType& b) {
  return a.direction != b.direction && a.obligation == b.capability &&
         a.capability == b.obligation;
}

struct Strict {
  std::vector<std::string> left, right;
  std::vector<std::string> path;

  DualityResult fail(std::string reason) const {
    DualityResult r;
    r.ok = false;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) r.path += '.';
      r.path += path[i];
    }
    if (r.path.empty()) r.path = "root";
    r.reason = std::move(reason);
    return r;
  }

  DualityResult run(const Type& t, const Type& s) {
    if (as<EndType>(t) && as<EndType>(s)) return {};
    if (const auto* a = as<TypeVar>(t)) {
      if (const auto* b = as<TypeVar>(s); b && vars_aligned(a->name, left, b->name, right)) {
        return {};
      }
      return fail("type variables do not correspond");
    }
    if (const auto* a = as<BaseType>(t)) {
      if (const auto* b = as<BaseType>(s); b && a->name == b->name) return {};
      return fail("base sorts differ");
    }
    if (const auto* a = as<ActionType>(t)) {
      const auto* b = as<ActionType>(s);
      if (!b) return fail("action against non-action");
      if (a->direction == b->direction) return fail("same direction on both sides");
      if (!actions_mirror(*a, *b)) return fail("priority pairs are not swapped");
      if (!type_equal(a->payload, b->payload)) {
        path.push_back("payload");
        return fail("payload types differ");
      }
      path.push_back("cont");
      auto r = run(a->continuation, b->continuation);
      path.pop_back();
      return r;
    }
    if (const auto* a = as<RecType>(t)) {
      const auto* b = as<RecType>(s);
      if (!b) return fail("recursion against non-recursion");
      if (a->index != b->index) return fail("recursion indices differ");
      left.push_back(a->var);
      right.push_back(b->var);
      path.push_back("body");
      auto r = run(a->body, b->body);
      path.pop_back();
      left.pop_back();
      right.pop_back();
      return r;
    }
    return fail("shapes differ");
  }
};

class Full {
 public:
  explicit Full(std::size_t budget) : budget_(budget) {}

  bool run(const Type& t, const Type& s) {
    if (++visited_ > budget_) {
      throw DepthExceeded("duality check exceeded " + std::to_string(budget_) + " pairs");
    }
    std::string key = key_in(t, left_) + " ~ " + key_in(s, right_);
    if (ancestors_.count(key)) return true;
    if (failed_.count(key)) return false;
    ancestors_.insert(key);
    bool ok = compute(t, s);
    ancestors_.erase(key);
    if (!ok) failed_.insert(key);
    return ok;
  }

 private:
  bool compute(const Type& t, const Type& s) {
    if (as<EndType>(t) && as<EndType>(s)) return true;
    if (const auto* a = as<TypeVar>(t)) {
      if (const auto* b = as<TypeVar>(s)) return vars_aligned(a->name, left_, b->name, right_);
    }
    if (const auto* a = as<BaseType>(t)) {
      const auto* b = as<BaseType>(s);
      return b && a->name == b->name;
    }
    if (const auto* a = as<ActionType>(t)) {
      if (const auto* b = as<ActionType>(s)) {
        return actions_mirror(*a, *b) && type_equal(a->payload, b->payload) &&
               run(a->continuation, b->continuation);
      }
    }
    const auto* ra = as<RecType>(t);
    const auto* rb = as<RecType>(s);
    if (ra && rb && ra->index == rb->index) {
      left_.push_back(ra->var);
      right_.push_back(rb->var);
      bool ok = run(ra->body, rb->body);
      left_.pop_back();
      right_.pop_back();
      if (ok) return true;
    }
    if (can_unfold(t) && run(unfold(t), s)) return true;
    if (can_unfold(s) && run(t, unfold(s))) return true;
    return false;
  }

  std::size_t budget_;
  std::size_t visited_ = 0;
  std::vector<std::string> left_, right_;
  std::unordered_set<std::string> ancestors_;
  std::unordered_set<std::string> failed_;
};

Type map_indices(const Type& t, Index to) {
  if (const auto* a = as<ActionType>(t)) {
    return ty::action(a->direction, a->obligation, a->capability, map_indices(a->payload, to),
                      map_indices(a->continuation, to));
  }
  if (const auto* r = as<RecType>(t)) {
    return ty::rec(r->index.is_infinite() ? to : r->index, r->var, map_indices(r->body, to));
  }
  return t;
}

bool approx_leq_in(const Type& a, const Type& b, std::vector<std::string>& ea,
                   std::vector<std::string>& eb) {
  if (as<EndType>(a)) return as<EndType>(b) != nullptr;
  if (const auto* x = as<TypeVar>(a)) {
    const auto* y = as<TypeVar>(b);
    return y && vars_aligned(x->name, ea, y->name, eb);
  }
  if (const auto* x = as<BaseType>(a)) {
    const auto* y = as<BaseType>(b);
    return y && x->name == y->name;
  }
  if (const auto* x = as<ActionType>(a)) {
    const auto* y = as<ActionType>(b);
    if (!y || x->direction != y->direction || x->obligation != y->obligation ||
        x->capability != y->capability) {
      return false;
    }
    std::vector<std::string> na, nb;
    return approx_leq_in(x->payload, y->payload, na, nb) &&
           approx_leq_in(x->continuation, y->continuation, ea, eb);
  }
  const auto* x = as<RecType>(a);
  const auto* y = as<RecType>(b);
  if (!x || !y || !(x->index <= y->index)) return false;
  ea.push_back(x->var);
  eb.push_back(y->var);
  bool ok = approx_leq_in(x->body, y->body, ea, eb);
  ea.pop_back();
  eb.pop_back();
  return ok;
}

bool any_index(const Type& t, bool infinite) {
  if (const auto* a = as<ActionType>(t)) {
    return any_index(a->payload, infinite) || any_index(a->continuation, infinite);
  }
  if (const auto* r = as<RecType>(t)) {
    return r->index.is_infinite() == infinite || any_index(r->body, infinite);
  }
  return false;
}

}  // namespace

WellFormedReport well_formed(const Type& t, const std::set<std::string>& allowed_free) {
  std::vector<std::string> bound;
  return wf(t, bound, allowed_free, Slot::kRoot);
}

Type unfold(const Type& t) {
  const auto* r = as<RecType>(t);
  if (!r) throw CannotUnfold("not a recursive type: " + pretty(t));
  if (r->index.is_zero()) throw CannotUnfold("recursion index is zero: " + pretty(t));
  return subst_type(r->body, r->var, ty::rec(r->index.predecessor(), r->var, r->body));
}

Priority obligation(const TypeVarEnv& sigma, const Type& t) {
  std::vector<std::string> chain;
  Type cur = t;
  while (const auto* r = as<RecType>(cur)) {
    chain.push_back(r->var);
    cur = r->body;
  }
  if (const auto* a = as<ActionType>(cur)) return a->obligation;
  if (const auto* v = as<TypeVar>(cur)) {
    if (std::find(chain.begin(), chain.end(), v->name) != chain.end()) {
      throw TypeOpError("obligation of a non-contractive type: " + pretty(t));
    }
    auto it = sigma.find(v->name);
    if (it == sigma.end()) throw UnboundTypeVar("unbound type variable '" + v->name + "'");
    return it->second;
  }
  return Priority::infinity();
}

Priority capability(const Type& t) {
  Type cur = t;
  while (const auto* r = as<RecType>(cur)) cur = r->body;
  if (const auto* a = as<ActionType>(cur)) return a->capability;
  throw NoAction("type has no topmost action: " + pretty(t));
}

Type syntactic_dual(const Type& t) {
  if (const auto* a = as<ActionType>(t)) {
    Direction d = a->direction == Direction::kIn ? Direction::kOut : Direction::kIn;
    return ty::action(d, a->capability, a->obligation, a->payload,
                      syntactic_dual(a->continuation));
  }
  if (const auto* r = as<RecType>(t)) return ty::rec(r->index, r->var, syntactic_dual(r->body));
  return t;
}

DualityResult dual_strict(const Type& t, const Type& s) { return Strict{}.run(t, s); }

bool dual_full(const Type& t, const Type& s, std::size_t budget) {
  return Full(budget).run(t, s);
}

std::string type_key(const Type& t) { return key_in(t, {}); }

bool type_equal(const Type& a, const Type& b) { return type_key(a) == type_key(b); }

Type type_approximant(const Type& t, Index index) { return map_indices(t, index); }

bool type_approx_leq(const Type& a, const Type& b) {
  std::vector<std::string> ea, eb;
  return approx_leq_in(a, b, ea, eb);
}

bool has_infinite_index(const Type& t) { return any_index(t, true); }
bool has_finite_index(const Type& t) { return any_index(t, false); }

}  // namespace sessprog
