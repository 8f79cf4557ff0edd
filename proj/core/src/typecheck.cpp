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

#include "sessprog/typecheck.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <set>

#include "sessprog/pretty.hpp"
#include "sessprog/syntax.hpp"

namespace sessprog {

const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::kLinearityViolation: return "LinearityViolation";
    case DiagnosticKind::kUnusedLinearName: return "UnusedLinearName";
    case DiagnosticKind::kSubjectTypeMismatch: return "SubjectTypeMismatch";
    case DiagnosticKind::kRecShapeMismatch: return "RecShapeMismatch";
    case DiagnosticKind::kDualityFailure: return "DualityFailure";
    case DiagnosticKind::kUnsatisfiableConstraints: return "UnsatisfiableConstraints";
    case DiagnosticKind::kUnboundName: return "UnboundName";
    case DiagnosticKind::kIllFormedType: return "IllFormedType";
    case DiagnosticKind::kNotClosed: return "NotClosed";
  }
  return "?";
}

namespace {

struct Reject {
  Diagnostic diagnostic;
};

bool nonlinear(const Type& t) { return as<BaseType>(t) != nullptr; }
bool discardable(const Type& t) { return as<EndType>(t) || nonlinear(t); }

std::string describe(const NameEnv& delta) {
  std::string out;
  for (const auto& [n, t] : delta) {
    if (!out.empty()) out += ", ";
    out += to_string(n) + " : " + pretty(t);
  }
  return out.empty() ? "(empty)" : out;
}

// Names a process may use: its free names plus, for each free process
// variable X, the names recorded in Γ(X).
std::set<Name> uses(const Proc& p, const ProcEnv& gamma) {
  std::set<Name> out = free_names(p);
  for (const auto& x : free_proc_vars(p)) {
    auto it = gamma.find(x);
    if (it == gamma.end()) continue;
    for (const auto& [n, _] : it->second) out.insert(n);
  }
  return out;
}

class Checker {
 public:
  explicit Checker(Index index) : index_(index) {}

  ConstraintSet constraints;

  void run(const TypeVarEnv& sigma, const ProcEnv& gamma, const NameEnv& delta, const Proc& p) {
    std::visit([&](const auto& x) { rule(x, sigma, gamma, delta, p); }, p->node);
  }

 private:
  [[noreturn]] void reject(DiagnosticKind k, const char* rule, const Proc& p, std::string msg) {
    throw Reject{Diagnostic{k, rule, p->pos, std::move(msg)}};
  }

  // Drops end-typed and base-typed bindings, rejecting anything else
  // outside `keep`.
  NameEnv discard(const NameEnv& delta, const std::set<Name>& keep, const char* rule,
                  const Proc& p) {
    NameEnv out;
    for (const auto& [n, t] : delta) {
      if (keep.count(n)) {
        out.emplace(n, t);
      } else if (!discardable(t)) {
        reject(DiagnosticKind::kUnusedLinearName, rule, p,
               "name " + to_string(n) + " : " + pretty(t) + " is never used");
      }
    }
    return out;
  }

  Priority ob(const TypeVarEnv& sigma, const Type& t, const Proc& p) {
    try {
      return obligation(sigma, t);
    } catch (const TypeOpError& e) {
      reject(DiagnosticKind::kIllFormedType, "obligation", p, e.what());
    }
  }

  void emit(const Priority& lhs, const Priority& rhs, const char* rule, const Proc& p) {
    constraints.push_back(Constraint{lhs, rhs, p->pos, rule});
  }

  const Type& lookup(const NameEnv& delta, const Name& n, const char* rule, const Proc& p) {
    auto it = delta.find(n);
    if (it == delta.end()) {
      reject(DiagnosticKind::kUnboundName, rule, p,
             "name " + to_string(n) + " is not in the environment " + describe(delta));
    }
    return it->second;
  }

  const ActionType& action(const Type& t, Direction d, const Name& n, const char* rule,
                           const Proc& p) {
    const auto* a = as<ActionType>(t);
    if (!a || a->direction != d) {
      reject(DiagnosticKind::kSubjectTypeMismatch, rule, p,
             std::string("name ") + to_string(n) + " has type " + pretty(t) + ", expected " +
                 (d == Direction::kIn ? "an input" : "an output"));
    }
    return *a;
  }

  void rule(const Idle&, const TypeVarEnv&, const ProcEnv&, const NameEnv& delta,
            const Proc& p) {
    discard(delta, {}, "t-idle", p);
  }

  void rule(const ProcVar& x, const TypeVarEnv& sigma, const ProcEnv& gamma,
            const NameEnv& delta, const Proc& p) {
    auto it = gamma.find(x.name);
    if (it == gamma.end()) {
      reject(DiagnosticKind::kUnboundName, "t-var", p,
             "process variable " + x.name + " is not bound");
    }
    const NameEnv& expected = it->second;
    std::set<Name> keep;
    for (const auto& [n, _] : expected) keep.insert(n);
    NameEnv actual = discard(delta, keep, "t-var", p);
    for (const auto& [n, t] : expected) {
      auto a = actual.find(n);
      if (a == actual.end()) {
        reject(DiagnosticKind::kLinearityViolation, "t-var", p,
               "name " + to_string(n) + " expected by " + x.name + " is not available");
      }
      if (!type_equal(a->second, t)) {
        reject(DiagnosticKind::kSubjectTypeMismatch, "t-var", p,
               "name " + to_string(n) + " has type " + pretty(a->second) + " but " + x.name +
                   " expects " + pretty(t));
      }
      const auto* v = as<TypeVar>(t);
      if (v && !sigma.count(v->name)) {
        reject(DiagnosticKind::kIllFormedType, "t-var", p,
               "type variable " + v->name + " is not bound");
      }
    }
  }

  void rule(const Input& x, const TypeVarEnv& sigma, const ProcEnv& gamma,
            const NameEnv& delta, const Proc& p) {
    const Type& t = lookup(delta, x.subject, "t-input", p);
    const ActionType& a = action(t, Direction::kIn, x.subject, "t-input", p);
    NameEnv rest = delta;
    rest.erase(x.subject);
    for (const auto& [n, s] : rest) emit(a.capability, ob(sigma, s, p), "t-input", p);
    Name bound = Name::variable(x.binder);
    if (auto it = rest.find(bound); it != rest.end()) {
      if (!discardable(it->second)) {
        reject(DiagnosticKind::kLinearityViolation, "t-input", p,
               "input variable " + x.binder + " shadows a linear name");
      }
      rest.erase(it);
    }
    rest.emplace(x.subject, a.continuation);
    rest.emplace(bound, a.payload);
    run(sigma, gamma, rest, x.body);
  }

  void rule(const Output& x, const TypeVarEnv& sigma, const ProcEnv& gamma,
            const NameEnv& delta, const Proc& p) {
    const Type& t = lookup(delta, x.subject, "t-output", p);
    const ActionType& a = action(t, Direction::kOut, x.subject, "t-output", p);
    NameEnv rest = delta;
    rest.erase(x.subject);
    if (const auto* n = std::get_if<Name>(&x.payload)) {
      if (*n == x.subject) {
        reject(DiagnosticKind::kLinearityViolation, "t-output", p,
               "endpoint " + to_string(*n) + " is sent over itself");
      }
      const Type& s = lookup(rest, *n, "t-output", p);
      if (!type_equal(s, a.payload)) {
        reject(DiagnosticKind::kSubjectTypeMismatch, "t-output", p,
               "payload " + to_string(*n) + " has type " + pretty(s) + ", expected " +
                   pretty(a.payload));
      }
      if (!nonlinear(s)) rest.erase(*n);
    } else if (!nonlinear(a.payload)) {
      reject(DiagnosticKind::kSubjectTypeMismatch, "t-output", p,
             "literal payload sent where " + pretty(a.payload) + " is expected");
    }
    emit(a.capability, ob(sigma, a.payload, p), "t-output", p);
    for (const auto& [n, s] : rest) emit(a.capability, ob(sigma, s, p), "t-output", p);
    rest.emplace(x.subject, a.continuation);
    run(sigma, gamma, rest, x.body);
  }

  void rule(const Parallel& x, const TypeVarEnv& sigma, const ProcEnv& gamma,
            const NameEnv& delta, const Proc& p) {
    SplitResult split = split_env(delta, x.left, x.right, gamma);
    if (split.error) {
      split.error->pos = p->pos;
      throw Reject{*split.error};
    }
    run(sigma, gamma, split.left, x.left);
    run(sigma, gamma, split.right, x.right);
  }

  void rule(const Restriction& x, const TypeVarEnv& sigma, const ProcEnv& gamma,
            const NameEnv& delta, const Proc& p) {
    Type pos = x.positive ? x.positive : ty::end();
    Type neg = x.negative ? x.negative : ty::end();
    for (const Type& t : {pos, neg}) {
      auto wf = well_formed(t);
      if (!wf.ok || nonlinear(t)) {
        reject(DiagnosticKind::kIllFormedType, "t-session", p,
               wf.ok ? "base sort used as a session type" : wf.message);
      }
    }
    if (index_.is_zero()) {
      DualityResult d = dual_strict(pos, neg);
      if (!d) {
        reject(DiagnosticKind::kDualityFailure, "t-session", p,
               "endpoint types of " + x.channel + " are not dual at " + d.path + ": " +
                   d.reason);
      }
    } else {
      bool ok = false;
      try {
        ok = dual_full(pos, neg);
      } catch (const DepthExceeded& e) {
        reject(DiagnosticKind::kDualityFailure, "t-session", p, e.what());
      }
      if (!ok) {
        reject(DiagnosticKind::kDualityFailure, "t-session", p,
               "endpoint types of " + x.channel + " are not dual");
      }
    }
    NameEnv inner = delta;
    Name plus = Name::endpoint(x.channel, Polarity::kPlus);
    Name minus = Name::endpoint(x.channel, Polarity::kMinus);
    if (inner.count(plus) || inner.count(minus)) {
      reject(DiagnosticKind::kLinearityViolation, "t-session", p,
             "restriction of " + x.channel + " shadows a name in the environment");
    }
    inner.emplace(plus, pos);
    inner.emplace(minus, neg);
    run(sigma, gamma, inner, x.body);
  }

  void rule(const Recursion& x, const TypeVarEnv& sigma, const ProcEnv& gamma,
            const NameEnv& delta, const Proc& p) {
    if (!(x.index <= index_)) {
      reject(DiagnosticKind::kRecShapeMismatch, "t-rec", p,
             "recursion index " + to_string(x.index) + " exceeds the judgment index " +
                 to_string(index_));
    }
    std::set<Name> keep;
    for (const auto& [n, t] : delta) {
      if (!discardable(t)) keep.insert(n);
    }
    NameEnv rec_env = discard(delta, keep, "t-rec", p);
    TypeVarEnv sigma2 = sigma;
    NameEnv opened;
    NameEnv header;
    for (const auto& [n, t] : rec_env) {
      const auto* r = as<RecType>(t);
      if (!r || r->index != x.index) {
        reject(DiagnosticKind::kRecShapeMismatch, "t-rec", p,
               "name " + to_string(n) + " has type " + pretty(t) +
                   ", expected a recursive type with index " + to_string(x.index));
      }
      std::string fresh = r->var + "#" + std::to_string(++counter_);
      sigma2.insert_or_assign(fresh, ob(sigma, t, p));
      opened.emplace(n, subst_type(r->body, r->var, ty::var(fresh)));
      header.emplace(n, ty::var(fresh));
    }
    ProcEnv gamma2 = gamma;
    gamma2[x.var] = header;
    run(sigma2, gamma2, opened, x.body);
  }

  Index index_;
  unsigned counter_ = 0;
};

}  // namespace

SplitResult split_env(const NameEnv& delta, const Proc& left, const Proc& right,
                      const ProcEnv& gamma) {
  SplitResult out;
  std::set<Name> l = uses(left, gamma);
  std::set<Name> r = uses(right, gamma);
  for (const auto& [n, t] : delta) {
    bool in_l = l.count(n) != 0;
    bool in_r = r.count(n) != 0;
    if (nonlinear(t)) {
      out.left.emplace(n, t);
      out.right.emplace(n, t);
    } else if (in_l && in_r) {
      out.error = Diagnostic{DiagnosticKind::kLinearityViolation, "t-par", {},
                             "name " + to_string(n) + " is used on both sides of |"};
      return out;
    } else if (in_r) {
      out.right.emplace(n, t);
    } else if (in_l || as<EndType>(t)) {
      out.left.emplace(n, t);
    } else {
      out.error = Diagnostic{DiagnosticKind::kUnusedLinearName, "t-par", {},
                             "name " + to_string(n) + " : " + pretty(t) + " is never used"};
      return out;
    }
  }
  return out;
}

CheckResult check(const TypeVarEnv& sigma, const ProcEnv& gamma, const NameEnv& delta,
                  const Proc& p, Index index) {
  CheckResult res;
  std::set<std::string> tvars;
  for (const auto& [v, _] : sigma) tvars.insert(v);
  for (const auto& [n, t] : delta) {
    auto wf = well_formed(t, tvars);
    if (!wf.ok) {
      res.ok = false;
      res.diagnostics.push_back(Diagnostic{DiagnosticKind::kIllFormedType, "environment",
                                           p->pos, to_string(n) + ": " + wf.message});
      return res;
    }
  }
  Checker checker(index);
  try {
    checker.run(sigma, gamma, delta, freshen(p));
  } catch (const Reject& r) {
    res.ok = false;
    res.diagnostics.push_back(r.diagnostic);
  }
  res.constraints = std::move(checker.constraints);
  return res;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

bool less(const Priority& a, const Priority& b, const Assignment& m, bool& defined) {
  auto value = [&](const Priority& p, std::uint64_t& out) -> bool {
    if (p.is_infinite()) return false;
    if (p.is_const()) {
      out = p.value();
      return true;
    }
    auto it = m.find(p.name());
    if (it == m.end()) {
      defined = false;
      out = 0;
      return true;
    }
    out = it->second;
    return true;
  };
  std::uint64_t x = 0, y = 0;
  bool fa = value(a, x);
  bool fb = value(b, y);
  if (!fb) return fa;  // finite < inf; inf < inf is false
  if (!fa) return false;
  return x < y;
}

}  // namespace

bool satisfies(const ConstraintSet& cs, const Assignment& assignment) {
  for (const auto& c : cs) {
    bool defined = true;
    bool ok = less(c.lhs, c.rhs, assignment, defined);
    if (!defined || !ok) return false;
  }
  return true;
}

SolveResult solve(const ConstraintSet& cs) {
  SolveResult res;
  std::vector<const Constraint*> edges;
  std::map<std::string, std::vector<const Constraint*>> out_edges;
  std::set<std::string> vars;
  for (const auto& c : cs) {
    if (c.rhs.is_infinite() && !c.lhs.is_infinite()) {
      if (c.lhs.is_var()) vars.insert(c.lhs.name());
      continue;
    }
    if (c.lhs.is_infinite() || (c.lhs.is_const() && c.rhs.is_const() &&
                                c.lhs.value() >= c.rhs.value())) {
      res.ok = false;
      res.witness = {c};
      return res;
    }
    if (c.lhs.is_var()) vars.insert(c.lhs.name());
    if (c.rhs.is_var()) vars.insert(c.rhs.name());
    if (c.lhs.is_var() && c.rhs.is_var()) out_edges[c.lhs.name()].push_back(&c);
    if (c.lhs.is_var() || c.rhs.is_var()) edges.push_back(&c);
  }
  for (auto& [_, es] : out_edges) {
    std::stable_sort(es.begin(), es.end(), [](const Constraint* a, const Constraint* b) {
      return a->rhs.name() < b->rhs.name();
    });
  }

  // Tarjan's algorithm; vertices visited in name order.
  std::map<std::string, int> idx, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> sccs;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    idx[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto* e : out_edges[v]) {
      const std::string& w = e->rhs.name();
      if (!idx.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], idx[w]);
      }
    }
    if (low[v] == idx[v]) {
      std::vector<std::string> comp;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      sccs.push_back(std::move(comp));
    }
  };
  for (const auto& v : vars) {
    if (!idx.count(v)) visit(v);
  }

  std::optional<std::string> cyclic_root;
  std::set<std::string> cyclic_comp;
  for (const auto& comp : sccs) {
    bool cyclic = comp.size() > 1;
    if (!cyclic) {
      for (const auto* e : out_edges[comp[0]]) cyclic |= e->rhs.name() == comp[0];
    }
    if (!cyclic) continue;
    std::string root = *std::min_element(comp.begin(), comp.end());
    if (!cyclic_root || root < *cyclic_root) {
      cyclic_root = root;
      cyclic_comp = std::set<std::string>(comp.begin(), comp.end());
    }
  }
  if (cyclic_root) {
    // Shortest cycle through the root, by BFS inside its component.
    const std::string& s = *cyclic_root;
    std::map<std::string, const Constraint*> via;
    std::deque<std::string> queue{s};
    std::set<std::string> seen{s};
    const Constraint* closing = nullptr;
    while (!queue.empty() && !closing) {
      std::string v = queue.front();
      queue.pop_front();
      for (const auto* e : out_edges[v]) {
        const std::string& w = e->rhs.name();
        if (!cyclic_comp.count(w)) continue;
        if (w == s) {
          closing = e;
          break;
        }
        if (seen.insert(w).second) {
          via[w] = e;
          queue.push_back(w);
        }
      }
    }
    std::vector<Constraint> cycle{*closing};
    std::string cur = closing->lhs.name();
    while (cur != s) {
      const Constraint* e = via.at(cur);
      cycle.push_back(*e);
      cur = e->lhs.name();
    }
    std::reverse(cycle.begin(), cycle.end());
    res.ok = false;
    res.witness = std::move(cycle);
    return res;
  }

  // Acyclic: longest-path layering in topological order.
  std::map<std::string, int> indeg;
  for (const auto& v : vars) indeg[v] = 0;
  for (const auto& [_, es] : out_edges) {
    for (const auto* e : es) ++indeg[e->rhs.name()];
  }
  std::map<std::string, std::uint64_t> value;
  std::map<std::string, const Constraint*> reason;
  for (const auto* c : edges) {
    if (c->lhs.is_const() && c->rhs.is_var()) {
      std::uint64_t lb = c->lhs.value() + 1;
      if (!value.count(c->rhs.name()) || value[c->rhs.name()] < lb) {
        value[c->rhs.name()] = lb;
        reason[c->rhs.name()] = c;
      }
    }
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [v, d] : indeg) {
    if (d == 0) ready.push(v);
  }
  while (!ready.empty()) {
    std::string v = ready.top();
    ready.pop();
    std::uint64_t here = value.count(v) ? value[v] : 0;
    res.assignment[v] = here;
    for (const auto* e : out_edges[v]) {
      const std::string& w = e->rhs.name();
      if (!value.count(w) || value[w] < here + 1) {
        value[w] = here + 1;
        reason[w] = e;
      }
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  for (const auto* c : edges) {
    if (!(c->lhs.is_var() && c->rhs.is_const())) continue;
    if (res.assignment.at(c->lhs.name()) < c->rhs.value()) continue;
    std::vector<Constraint> chain{*c};
    std::string cur = c->lhs.name();
    while (reason.count(cur)) {
      const Constraint* r = reason.at(cur);
      chain.push_back(*r);
      if (!r->lhs.is_var()) break;
      cur = r->lhs.name();
    }
    std::reverse(chain.begin(), chain.end());
    res.ok = false;
    res.assignment.clear();
    res.witness = std::move(chain);
    return res;
  }
  return res;
}

Verdict check_closed(const Proc& p, Index index) {
  Verdict v;
  std::set<Name> fn = free_names(p);
  std::set<std::string> fpv = free_proc_vars(p);
  if (!fn.empty() || !fpv.empty()) {
    std::string names;
    for (const auto& n : fn) names += (names.empty() ? "" : ", ") + to_string(n);
    for (const auto& x : fpv) names += (names.empty() ? "" : ", ") + x;
    v.ok = false;
    v.diagnostics.push_back(Diagnostic{DiagnosticKind::kNotClosed, "closed", p->pos,
                                       "process has free names: " + names});
    return v;
  }
  v.check = check({}, {}, {}, p, index);
  if (!v.check.ok) {
    v.ok = false;
    v.diagnostics = v.check.diagnostics;
    return v;
  }
  v.solution = solve(v.check.constraints);
  if (!v.solution.ok) {
    v.ok = false;
    std::string chain;
    for (const auto& c : v.solution.witness) {
      if (!chain.empty()) chain += ", ";
      chain += to_string(c.lhs) + " < " + to_string(c.rhs);
    }
    SourcePos pos = v.solution.witness.empty() ? p->pos : v.solution.witness.front().pos;
    v.diagnostics.push_back(Diagnostic{DiagnosticKind::kUnsatisfiableConstraints, "solve", pos,
                                       "unsatisfiable priority constraints: " + chain});
  }
  return v;
}

std::vector<NameEnv> context_reduce(const NameEnv& delta) {
  std::vector<NameEnv> out;
  for (const auto& [n, t] : delta) {
    const auto* r = as<RecType>(t);
    if (!r || r->index.is_zero()) continue;
    NameEnv next = delta;
    next[n] = unfold(t);
    out.push_back(std::move(next));
  }
  for (const auto& [n, t] : delta) {
    if (!n.is_endpoint() || n.polarity != Polarity::kPlus) continue;
    auto peer = delta.find(n.peer());
    if (peer == delta.end()) continue;
    const auto* a = as<ActionType>(t);
    const auto* b = as<ActionType>(peer->second);
    if (!a || !b || a->direction == b->direction || a->obligation != b->capability ||
        a->capability != b->obligation || !type_equal(a->payload, b->payload)) {
      continue;
    }
    NameEnv next = delta;
    next[n] = a->continuation;
    next[n.peer()] = b->continuation;
    out.push_back(std::move(next));
  }
  return out;
}

bool balanced(const NameEnv& delta) {
  for (const auto& [n, t] : delta) {
    if (!n.is_endpoint() || n.polarity != Polarity::kPlus) continue;
    auto peer = delta.find(n.peer());
    if (peer != delta.end() && !dual_full(t, peer->second)) return false;
  }
  return true;
}

}  // namespace sessprog
