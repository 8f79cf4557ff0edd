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

#include "sessprog/semantics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "sessprog/pretty.hpp"
#include "sessprog/syntax.hpp"
#include "sessprog/types.hpp"

namespace sessprog {

namespace {

// ---------------------------------------------------------------------------
// Serialization

long position(const std::vector<std::string>& stack, const std::string& id) {
  for (std::size_t i = stack.size(); i-- > 0;) {
    if (stack[i] == id) return static_cast<long>(stack.size() - 1 - i);
  }
  return -1;
}

// Produces two keys at once: `erased` ignores which top-level channel is
// used, `full` names top-level channels by their current ordinal. `order`
// lists top-level channels by first occurrence.
struct Ser {
  const std::set<std::string>* top = nullptr;
  const std::map<std::string, std::string>* ordinal = nullptr;
  std::vector<std::string> vars, chans, pvars;
  std::string erased, full;
  std::vector<std::string> order;

  Ser child() const {
    Ser s;
    s.top = top;
    s.ordinal = ordinal;
    s.vars = vars;
    s.chans = chans;
    s.pvars = pvars;
    return s;
  }

  void put(const std::string& s) {
    erased += s;
    full += s;
  }

  void name(const Name& n) {
    if (n.is_variable()) {
      long k = position(vars, n.id);
      put(k >= 0 ? "x^" + std::to_string(k) : "x:" + n.id + ";");
      return;
    }
    std::string pol = n.polarity == Polarity::kPlus ? "+" : "-";
    long k = position(chans, n.id);
    if (k >= 0) {
      put("c^" + std::to_string(k) + pol);
    } else if (top && top->count(n.id)) {
      if (std::find(order.begin(), order.end(), n.id) == order.end()) order.push_back(n.id);
      erased += "@" + pol;
      auto it = ordinal->find(n.id);
      full += (it != ordinal->end() ? it->second : std::string("@?")) + pol;
    } else {
      put("f:" + n.id + pol);
    }
  }

  void value(const Value& v) {
    if (const auto* n = std::get_if<Name>(&v)) {
      name(*n);
    } else {
      put("#" + std::to_string(std::get<Literal>(v).value));
    }
  }

  void proc(const Proc& p) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Idle>) {
            put("0");
          } else if constexpr (std::is_same_v<T, ProcVar>) {
            long k = position(pvars, x.name);
            put(k >= 0 ? "X^" + std::to_string(k) : "X:" + x.name + ";");
          } else if constexpr (std::is_same_v<T, Input>) {
            put("I");
            name(x.subject);
            put(".");
            vars.push_back(x.binder);
            proc(x.body);
            vars.pop_back();
          } else if constexpr (std::is_same_v<T, Output>) {
            put("O");
            name(x.subject);
            put(",");
            value(x.payload);
            put(".");
            proc(x.body);
          } else if constexpr (std::is_same_v<T, Parallel>) {
            parallel(p);
          } else if constexpr (std::is_same_v<T, Restriction>) {
            put("N[");
            if (x.positive) put(type_key(x.positive) + "~" + type_key(x.negative));
            put("](");
            chans.push_back(x.channel);
            proc(x.body);
            chans.pop_back();
            put(")");
          } else {
            put("R" + to_string(x.index) + ".");
            pvars.push_back(x.var);
            proc(x.body);
            pvars.pop_back();
          }
        },
        p->node);
  }

  // Nested compositions are flattened, stripped of idle components and
  // sorted, so that congruent bodies serialize identically.
  void parallel(const Proc& p) {
    std::vector<Proc> parts;
    std::vector<Proc> todo{p};
    while (!todo.empty()) {
      Proc q = todo.back();
      todo.pop_back();
      if (const auto* par = as<Parallel>(q)) {
        todo.push_back(par->right);
        todo.push_back(par->left);
      } else if (!as<Idle>(q)) {
        parts.push_back(q);
      }
    }
    if (parts.empty()) {
      put("0");
      return;
    }
    if (parts.size() == 1) {
      proc(parts[0]);
      return;
    }
    std::vector<Ser> subs;
    for (const auto& q : parts) {
      subs.push_back(child());
      subs.back().proc(q);
    }
    std::stable_sort(subs.begin(), subs.end(), [](const Ser& a, const Ser& b) {
      return std::tie(a.erased, a.full) < std::tie(b.erased, b.full);
    });
    put("P(");
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (i) put(";");
      erased += subs[i].erased;
      full += subs[i].full;
      for (const auto& c : subs[i].order) {
        if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
      }
    }
    put(")");
  }
};

std::string decl_key(const ChannelDecl& d) {
  if (!d.positive) return "-";
  return type_key(d.positive) + "~" + type_key(d.negative);
}

bool discardable(const ChannelDecl& d) {
  return !d.positive || (as<EndType>(d.positive) && as<EndType>(d.negative));
}

// ---------------------------------------------------------------------------
// Hoisting

struct Hoist {
  std::set<std::string> free;
  std::set<std::string> hoisted;
  NameSupply supply;
  std::vector<ChannelDecl> decls;
  std::vector<Proc> threads;

  void collect(const Proc& p) {
    if (const auto* par = as<Parallel>(p)) {
      collect(par->left);
      collect(par->right);
    } else if (const auto* r = as<Restriction>(p)) {
      std::string channel = r->channel;
      Proc body = r->body;
      if (hoisted.count(channel) || free.count(channel)) {
        std::string fresh = supply.fresh(channel);
        body = rename_channel(body, channel, fresh);
        channel = fresh;
      }
      hoisted.insert(channel);
      decls.push_back(ChannelDecl{channel, r->positive, r->negative});
      collect(body);
    } else if (!as<Idle>(p)) {
      threads.push_back(p);
    }
  }
};

}  // namespace

CanonState canonicalize(const Proc& p) {
  Hoist h;
  h.free = free_channels(p);
  h.supply = NameSupply(all_identifiers(p));
  h.collect(p);

  std::set<std::string> used;
  for (const auto& t : h.threads) {
    for (const auto& c : free_channels(t)) used.insert(c);
  }
  std::vector<ChannelDecl> decls;
  for (auto& d : h.decls) {
    if (used.count(d.name) || !discardable(d)) decls.push_back(std::move(d));
  }
  std::set<std::string> top;
  for (const auto& d : decls) top.insert(d.name);

  // Unused channels (kept for their annotation) are ordered after the used
  // ones, by annotation.
  std::vector<const ChannelDecl*> unused;
  for (const auto& d : decls) {
    if (!used.count(d.name)) unused.push_back(&d);
  }
  std::stable_sort(unused.begin(), unused.end(), [](const ChannelDecl* a, const ChannelDecl* b) {
    return decl_key(*a) < decl_key(*b);
  });

  std::map<std::string, std::string> ordinal;
  std::vector<Ser> sers;
  std::vector<std::size_t> perm(h.threads.size());
  sers.resize(h.threads.size());
  for (int round = 0; round < 8; ++round) {
    for (std::size_t i = 0; i < h.threads.size(); ++i) {
      // Threads without top-level channels serialize independently of the ordinals.
      if (round > 0 && sers[i].order.empty()) continue;
      Ser s;
      s.top = &top;
      s.ordinal = &ordinal;
      s.proc(h.threads[i]);
      sers[i] = std::move(s);
    }
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(sers[a].erased, sers[a].full) < std::tie(sers[b].erased, sers[b].full);
    });
    std::map<std::string, std::string> next;
    auto assign = [&](const std::string& c) {
      if (!next.count(c)) next.emplace(c, "@" + std::to_string(next.size()));
    };
    for (std::size_t i : perm) {
      for (const auto& c : sers[i].order) assign(c);
    }
    for (const auto* d : unused) assign(d->name);
    if (next == ordinal || top.empty()) break;
    ordinal = std::move(next);
  }

  CanonState s;
  std::vector<std::pair<std::size_t, const ChannelDecl*>> by_ordinal;
  for (const auto& d : decls) by_ordinal.emplace_back(std::stoul(ordinal.at(d.name).substr(1)), &d);
  std::sort(by_ordinal.begin(), by_ordinal.end());
  s.key = "C";
  for (const auto& [_, d] : by_ordinal) {
    s.channels.push_back(*d);
    s.key += "[" + decl_key(*d) + "]";
  }
  s.key += "\n";
  for (std::size_t i : perm) {
    s.threads.push_back(h.threads[i]);
    s.key += sers[i].full;
    s.key += "\n";
  }
  return s;
}

Proc to_process(const CanonState& s) {
  Proc body;
  for (std::size_t i = s.threads.size(); i-- > 0;) {
    body = body ? proc::par(s.threads[i], body) : s.threads[i];
  }
  if (!body) body = proc::idle();
  for (std::size_t i = s.channels.size(); i-- > 0;) {
    const auto& d = s.channels[i];
    body = proc::restrict(d.name, d.positive, d.negative, body);
  }
  return body;
}

std::uint64_t state_hash(const CanonState& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s.key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

NameSupply supply_for(const CanonState& s) {
  NameSupply supply;
  for (const auto& t : s.threads) supply.reserve_all(all_identifiers(t));
  for (const auto& d : s.channels) supply.reserve(d.name);
  return supply;
}

CanonState successor(std::vector<ChannelDecl> channels, std::vector<Proc> threads) {
  CanonState raw;
  raw.channels = std::move(channels);
  raw.threads = std::move(threads);
  return canonicalize(to_process(raw));
}

}  // namespace

std::vector<Transition> step(const CanonState& s) {
  std::vector<Transition> out;
  const std::size_t n = s.threads.size();

  for (std::size_t i = 0; i < n; ++i) {
    const auto* o = as<Output>(s.threads[i]);
    if (!o || !o->subject.is_endpoint()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto* in = as<Input>(s.threads[j]);
      if (!in || in->subject != o->subject.peer()) continue;
      NameSupply supply = supply_for(s);
      std::vector<Proc> threads;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i && k != j) threads.push_back(s.threads[k]);
      }
      threads.push_back(o->body);
      threads.push_back(subst_name_renaming(in->body, in->binder, o->payload, supply));
      std::vector<ChannelDecl> channels = s.channels;
      for (auto& d : channels) {
        if (d.name != o->subject.id || !d.positive) continue;
        const auto* a = as<ActionType>(d.positive);
        const auto* b = as<ActionType>(d.negative);
        if (a && b) {
          d.positive = a->continuation;
          d.negative = b->continuation;
        }
      }
      RedexLabel label;
      label.kind = RedexLabel::Kind::kComm;
      label.channel = o->subject.id;
      label.payload = o->payload;
      label.threads = {i, j};
      out.push_back(Transition{std::move(label), successor(std::move(channels), std::move(threads))});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto* r = as<Recursion>(s.threads[i]);
    if (!r || r->index.is_zero()) continue;
    NameSupply supply = supply_for(s);
    Proc unfolded = subst_proc_renaming(
        r->body, r->var, proc::rec(r->index.predecessor(), r->var, r->body), supply);
    std::vector<Proc> threads = s.threads;
    threads[i] = unfolded;
    std::vector<ChannelDecl> channels = s.channels;
    for (const auto& name : free_names(s.threads[i])) {
      if (!name.is_endpoint()) continue;
      for (auto& d : channels) {
        if (d.name != name.id || !d.positive) continue;
        Type& t = name.polarity == Polarity::kPlus ? d.positive : d.negative;
        const auto* rt = as<RecType>(t);
        if (rt && !rt->index.is_zero()) t = unfold(t);
      }
    }
    RedexLabel label;
    label.kind = RedexLabel::Kind::kRec;
    label.rec_var = r->var;
    label.threads = {i};
    out.push_back(Transition{std::move(label), successor(std::move(channels), std::move(threads))});
  }
  return out;
}

bool is_normal_form(const CanonState& s) { return step(s).empty(); }

std::vector<std::pair<std::size_t, RedexLabel>> StateGraph::path_to(std::size_t state) const {
  std::vector<std::pair<std::size_t, RedexLabel>> path;
  std::size_t cur = state;
  while (parent[cur]) {
    auto [from, edge] = *parent[cur];
    path.emplace_back(cur, edges[from][edge].label);
    cur = from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

StateGraph reachable(const CanonState& s, std::size_t max_states) {
  StateGraph g;
  std::unordered_map<std::string, std::size_t> index;
  g.states.push_back(s);
  g.edges.emplace_back();
  g.parent.emplace_back();
  index.emplace(s.key, 0);
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    std::vector<Transition> next = step(g.states[i]);
    for (auto& t : next) {
      std::size_t target;
      auto it = index.find(t.target.key);
      if (it != index.end()) {
        target = it->second;
      } else {
        if (g.states.size() >= max_states) {
          g.truncated = true;
          continue;
        }
        target = g.states.size();
        index.emplace(t.target.key, target);
        g.states.push_back(std::move(t.target));
        g.edges.emplace_back();
        g.parent.emplace_back(std::make_pair(i, g.edges[i].size()));
      }
      g.edges[i].push_back(StateGraph::Edge{std::move(t.label), target});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Approximants

namespace {

bool proc_any_index(const Proc& p, bool infinite) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle> || std::is_same_v<T, ProcVar>) {
          return false;
        } else if constexpr (std::is_same_v<T, Input> || std::is_same_v<T, Output>) {
          return proc_any_index(x.body, infinite);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return proc_any_index(x.left, infinite) || proc_any_index(x.right, infinite);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          if (x.positive) {
            bool hit = infinite ? has_infinite_index(x.positive) || has_infinite_index(x.negative)
                                : has_finite_index(x.positive) || has_finite_index(x.negative);
            if (hit) return true;
          }
          return proc_any_index(x.body, infinite);
        } else {
          return x.index.is_infinite() == infinite || proc_any_index(x.body, infinite);
        }
      },
      p->node);
}

Proc map_indices(const Proc& p, Index to) {
  const SourcePos pos = p->pos;
  return std::visit(
      [&](const auto& x) -> Proc {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle> || std::is_same_v<T, ProcVar>) {
          return p;
        } else if constexpr (std::is_same_v<T, Input>) {
          return proc::input(x.subject, x.binder, map_indices(x.body, to), pos);
        } else if constexpr (std::is_same_v<T, Output>) {
          return proc::output(x.subject, x.payload, map_indices(x.body, to), pos);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return proc::par(map_indices(x.left, to), map_indices(x.right, to), pos);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          Type a = x.positive ? type_approximant(x.positive, to) : nullptr;
          Type b = x.negative ? type_approximant(x.negative, to) : nullptr;
          return proc::restrict(x.channel, a, b, map_indices(x.body, to), pos);
        } else {
          return proc::rec(x.index.is_infinite() ? to : x.index, x.var, map_indices(x.body, to),
                           pos);
        }
      },
      p->node);
}

struct Leq {
  std::vector<std::string> va, vb, ca, cb, pa, pb;
  // Bijection between top-level channels of the two sides, extended on
  // demand. Null for plain process comparison.
  const std::set<std::string>* top_a = nullptr;
  const std::set<std::string>* top_b = nullptr;
  std::map<std::string, std::string>* fwd = nullptr;
  std::map<std::string, std::string>* rev = nullptr;

  bool stacks(const std::vector<std::string>& sa, const std::string& a,
              const std::vector<std::string>& sb, const std::string& b, bool& bound) {
    long ia = position(sa, a), ib = position(sb, b);
    bound = ia >= 0 || ib >= 0;
    return ia == ib;
  }

  bool name(const Name& a, const Name& b) {
    if (a.kind != b.kind || a.polarity != b.polarity) return false;
    bool bound = false;
    if (a.is_variable()) {
      bool same_pos = stacks(va, a.id, vb, b.id, bound);
      return bound ? same_pos : a.id == b.id;
    }
    bool same_pos = stacks(ca, a.id, cb, b.id, bound);
    if (bound) return same_pos;
    bool ta = top_a && top_a->count(a.id);
    bool tb = top_b && top_b->count(b.id);
    if (ta != tb) return false;
    if (!ta) return a.id == b.id;
    auto f = fwd->find(a.id);
    auto r = rev->find(b.id);
    if (f == fwd->end() && r == rev->end()) {
      fwd->emplace(a.id, b.id);
      rev->emplace(b.id, a.id);
      return true;
    }
    return f != fwd->end() && f->second == b.id;
  }

  bool value(const Value& a, const Value& b) {
    const auto* na = std::get_if<Name>(&a);
    const auto* nb = std::get_if<Name>(&b);
    if (na && nb) return name(*na, *nb);
    if (!na && !nb) return std::get<Literal>(a) == std::get<Literal>(b);
    return false;
  }

  bool proc(const Proc& p, const Proc& q) {
    if (p->node.index() != q->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(q->node);
          if constexpr (std::is_same_v<T, Idle>) {
            return true;
          } else if constexpr (std::is_same_v<T, ProcVar>) {
            bool bound = false;
            bool same_pos = stacks(pa, x.name, pb, y.name, bound);
            return bound ? same_pos : x.name == y.name;
          } else if constexpr (std::is_same_v<T, Input>) {
            if (!name(x.subject, y.subject)) return false;
            va.push_back(x.binder);
            vb.push_back(y.binder);
            bool ok = proc(x.body, y.body);
            va.pop_back();
            vb.pop_back();
            return ok;
          } else if constexpr (std::is_same_v<T, Output>) {
            return name(x.subject, y.subject) && value(x.payload, y.payload) &&
                   proc(x.body, y.body);
          } else if constexpr (std::is_same_v<T, Parallel>) {
            return proc(x.left, y.left) && proc(x.right, y.right);
          } else if constexpr (std::is_same_v<T, Restriction>) {
            if (static_cast<bool>(x.positive) != static_cast<bool>(y.positive)) return false;
            if (x.positive && (!type_approx_leq(x.positive, y.positive) ||
                               !type_approx_leq(x.negative, y.negative))) {
              return false;
            }
            ca.push_back(x.channel);
            cb.push_back(y.channel);
            bool ok = proc(x.body, y.body);
            ca.pop_back();
            cb.pop_back();
            return ok;
          } else {
            if (!(x.index <= y.index)) return false;
            pa.push_back(x.var);
            pb.push_back(y.var);
            bool ok = proc(x.body, y.body);
            pa.pop_back();
            pb.pop_back();
            return ok;
          }
        },
        p->node);
  }
};

bool decl_leq(const ChannelDecl& a, const ChannelDecl& b) {
  if (static_cast<bool>(a.positive) != static_cast<bool>(b.positive)) return false;
  return !a.positive ||
         (type_approx_leq(a.positive, b.positive) && type_approx_leq(a.negative, b.negative));
}

struct StateMatcher {
  const CanonState& p;
  const CanonState& q;
  std::set<std::string> top_p, top_q;
  std::vector<bool> used;

  bool threads(std::size_t i, std::map<std::string, std::string> fwd,
               std::map<std::string, std::string> rev) {
    if (i == p.threads.size()) return channels(fwd, rev);
    for (std::size_t j = 0; j < q.threads.size(); ++j) {
      if (used[j]) continue;
      auto f = fwd;
      auto r = rev;
      Leq leq;
      leq.top_a = &top_p;
      leq.top_b = &top_q;
      leq.fwd = &f;
      leq.rev = &r;
      if (!leq.proc(p.threads[i], q.threads[j])) continue;
      used[j] = true;
      if (threads(i + 1, std::move(f), std::move(r))) return true;
      used[j] = false;
    }
    return false;
  }

  bool channels(std::map<std::string, std::string>& fwd, std::map<std::string, std::string>& rev) {
    std::map<std::string, const ChannelDecl*> qd;
    for (const auto& d : q.channels) qd.emplace(d.name, &d);
    std::vector<const ChannelDecl*> rest_p;
    for (const auto& d : p.channels) {
      auto it = fwd.find(d.name);
      if (it == fwd.end()) {
        rest_p.push_back(&d);
      } else if (!decl_leq(d, *qd.at(it->second))) {
        return false;
      }
    }
    std::vector<const ChannelDecl*> rest_q;
    for (const auto& d : q.channels) {
      if (!rev.count(d.name)) rest_q.push_back(&d);
    }
    if (rest_p.size() != rest_q.size()) return false;
    std::vector<bool> taken(rest_q.size(), false);
    return match_rest(rest_p, rest_q, taken, 0);
  }

  bool match_rest(const std::vector<const ChannelDecl*>& a, const std::vector<const ChannelDecl*>& b,
                  std::vector<bool>& taken, std::size_t i) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (taken[j] || !decl_leq(*a[i], *b[j])) continue;
      taken[j] = true;
      if (match_rest(a, b, taken, i + 1)) return true;
      taken[j] = false;
    }
    return false;
  }
};

}  // namespace

bool is_user_process(const Proc& p) { return !proc_any_index(p, false); }

bool is_finite_process(const Proc& p) { return !proc_any_index(p, true); }

Proc approximant(const Proc& p, Index index) {
  if (!is_user_process(p)) {
    throw NotUserProcess("process contains a finite recursion index: " + pretty(p));
  }
  return map_indices(p, index);
}

Proc approximant_lenient(const Proc& p, Index index) { return map_indices(p, index); }

bool approx_leq(const Proc& p, const Proc& q) {
  Leq leq;
  return leq.proc(p, q);
}

bool approx_leq_state(const CanonState& p, const CanonState& q) {
  if (p.threads.size() != q.threads.size() || p.channels.size() != q.channels.size()) {
    return false;
  }
  StateMatcher m{p, q, {}, {}, std::vector<bool>(q.threads.size(), false)};
  for (const auto& d : p.channels) m.top_p.insert(d.name);
  for (const auto& d : q.channels) m.top_q.insert(d.name);
  return m.threads(0, {}, {});
}

std::optional<std::vector<CanonState>> simulate_trace(const CanonState& start,
                                                      const std::vector<CanonState>& trace) {
  if (trace.empty() || !approx_leq_state(start, trace[0])) return std::nullopt;
  std::vector<CanonState> acc{start};
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i + 1 == trace.size()) return true;
    for (auto& t : step(acc.back())) {
      if (!approx_leq_state(t.target, trace[i + 1])) continue;
      acc.push_back(std::move(t.target));
      if (go(i + 1)) return true;
      acc.pop_back();
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return acc;
}

}  // namespace sessprog
