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

#include "sessprog/syntax.hpp"

#include <cctype>
#include <map>

namespace sessprog {

std::string NameSupply::fresh(const std::string& base) {
  // Strip an existing _N suffix so renaming c_1 gives c_2, not c_1_1.
  std::string stem = base;
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() && us > 0) {
    bool digits = true;
    for (std::size_t i = us + 1; i < stem.size(); ++i) {
      digits = digits && std::isdigit(static_cast<unsigned char>(stem[i]));
    }
    if (digits) stem.resize(us);
  }
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (used_.insert(candidate).second) return candidate;
  }
}

namespace {

void collect_free_names(const Proc& p, std::set<Name>& bound_vars,
                        std::set<std::string>& bound_chans, std::set<Name>& out) {
  auto add = [&](const Name& n) {
    if (n.is_variable() ? bound_vars.count(n) == 0 : bound_chans.count(n.id) == 0) {
      out.insert(n);
    }
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Input>) {
          add(x.subject);
          Name b = Name::variable(x.binder);
          bool inserted = bound_vars.insert(b).second;
          collect_free_names(x.body, bound_vars, bound_chans, out);
          if (inserted) bound_vars.erase(b);
        } else if constexpr (std::is_same_v<T, Output>) {
          add(x.subject);
          if (const auto* n = std::get_if<Name>(&x.payload)) add(*n);
          collect_free_names(x.body, bound_vars, bound_chans, out);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          collect_free_names(x.left, bound_vars, bound_chans, out);
          collect_free_names(x.right, bound_vars, bound_chans, out);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          bool inserted = bound_chans.insert(x.channel).second;
          collect_free_names(x.body, bound_vars, bound_chans, out);
          if (inserted) bound_chans.erase(x.channel);
        } else if constexpr (std::is_same_v<T, Recursion>) {
          collect_free_names(x.body, bound_vars, bound_chans, out);
        }
      },
      p->node);
}

void collect_fpv(const Proc& p, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ProcVar>) {
          if (!bound.count(x.name)) out.insert(x.name);
        } else if constexpr (std::is_same_v<T, Input> || std::is_same_v<T, Output> ||
                             std::is_same_v<T, Restriction>) {
          collect_fpv(x.body, bound, out);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          collect_fpv(x.left, bound, out);
          collect_fpv(x.right, bound, out);
        } else if constexpr (std::is_same_v<T, Recursion>) {
          bool inserted = bound.insert(x.var).second;
          collect_fpv(x.body, bound, out);
          if (inserted) bound.erase(x.var);
        }
      },
      p->node);
}

void collect_ids(const Proc& p, std::set<std::string>& out) {
  auto name = [&](const Name& n) { out.insert(n.id); };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ProcVar>) {
          out.insert(x.name);
        } else if constexpr (std::is_same_v<T, Input>) {
          name(x.subject);
          out.insert(x.binder);
          collect_ids(x.body, out);
        } else if constexpr (std::is_same_v<T, Output>) {
          name(x.subject);
          if (const auto* n = std::get_if<Name>(&x.payload)) name(*n);
          collect_ids(x.body, out);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          collect_ids(x.left, out);
          collect_ids(x.right, out);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          out.insert(x.channel);
          collect_ids(x.body, out);
        } else if constexpr (std::is_same_v<T, Recursion>) {
          out.insert(x.var);
          collect_ids(x.body, out);
        }
      },
      p->node);
}

bool has_free_var(const Proc& p, const std::string& var) {
  return free_names(p).count(Name::variable(var)) != 0;
}

bool has_free_proc_var(const Proc& p, const std::string& x) {
  return free_proc_vars(p).count(x) != 0;
}

// A literal landing in subject position gives a thread that can never
// synchronize; it is kept as a variable spelled by the literal.
Name value_as_subject(const Value& v) {
  if (const auto* n = std::get_if<Name>(&v)) return *n;
  return Name::variable(std::to_string(std::get<Literal>(v).value));
}

Name subst_in_name(const Name& n, const std::string& var, const Value& replacement) {
  if (n.is_variable() && n.id == var) return value_as_subject(replacement);
  return n;
}

Value subst_in_value(const Value& v, const std::string& var, const Value& replacement) {
  if (const auto* n = std::get_if<Name>(&v)) {
    if (n->is_variable() && n->id == var) return replacement;
  }
  return v;
}

// Shared worker. With supply == nullptr a capture aborts with nullopt;
// otherwise the capturing binder is renamed.
std::optional<Proc> subst_name_impl(const Proc& p, const std::string& var,
                                    const Value& replacement, NameSupply* supply) {
  const SourcePos pos = p->pos;
  return std::visit(
      [&](const auto& x) -> std::optional<Proc> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle> || std::is_same_v<T, ProcVar>) {
          return p;
        } else if constexpr (std::is_same_v<T, Input>) {
          Name subject = subst_in_name(x.subject, var, replacement);
          if (x.binder == var) return proc::input(subject, x.binder, x.body, pos);
          std::string binder = x.binder;
          Proc body = x.body;
          const auto* rn = std::get_if<Name>(&replacement);
          if (rn && rn->is_variable() && rn->id == binder && has_free_var(body, var)) {
            if (!supply) return std::nullopt;
            std::string fresh = supply->fresh(binder);
            body = *subst_name_impl(body, binder, Name::variable(fresh), supply);
            binder = fresh;
          }
          auto nb = subst_name_impl(body, var, replacement, supply);
          if (!nb) return std::nullopt;
          return proc::input(subject, binder, *nb, pos);
        } else if constexpr (std::is_same_v<T, Output>) {
          auto nb = subst_name_impl(x.body, var, replacement, supply);
          if (!nb) return std::nullopt;
          return proc::output(subst_in_name(x.subject, var, replacement),
                              subst_in_value(x.payload, var, replacement), *nb, pos);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          auto l = subst_name_impl(x.left, var, replacement, supply);
          if (!l) return std::nullopt;
          auto r = subst_name_impl(x.right, var, replacement, supply);
          if (!r) return std::nullopt;
          return proc::par(*l, *r, pos);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          std::string channel = x.channel;
          Proc body = x.body;
          const auto* rn = std::get_if<Name>(&replacement);
          if (rn && rn->is_endpoint() && rn->id == channel && has_free_var(body, var)) {
            if (!supply) return std::nullopt;
            std::string fresh = supply->fresh(channel);
            body = rename_channel(body, channel, fresh);
            channel = fresh;
          }
          auto nb = subst_name_impl(body, var, replacement, supply);
          if (!nb) return std::nullopt;
          return proc::restrict(channel, x.positive, x.negative, *nb, pos);
        } else {
          auto nb = subst_name_impl(x.body, var, replacement, supply);
          if (!nb) return std::nullopt;
          return proc::rec(x.index, x.var, *nb, pos);
        }
      },
      p->node);
}

std::optional<Proc> subst_proc_impl(const Proc& p, const std::string& target, const Proc& q,
                                    const std::set<Name>& q_names,
                                    const std::set<std::string>& q_pvs, NameSupply* supply) {
  const SourcePos pos = p->pos;
  return std::visit(
      [&](const auto& x) -> std::optional<Proc> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle>) {
          return p;
        } else if constexpr (std::is_same_v<T, ProcVar>) {
          return x.name == target ? q : p;
        } else if constexpr (std::is_same_v<T, Input>) {
          std::string binder = x.binder;
          Proc body = x.body;
          if (q_names.count(Name::variable(binder)) && has_free_proc_var(body, target)) {
            if (!supply) return std::nullopt;
            std::string fresh = supply->fresh(binder);
            body = *subst_name_impl(body, binder, Name::variable(fresh), supply);
            binder = fresh;
          }
          auto nb = subst_proc_impl(body, target, q, q_names, q_pvs, supply);
          if (!nb) return std::nullopt;
          return proc::input(x.subject, binder, *nb, pos);
        } else if constexpr (std::is_same_v<T, Output>) {
          auto nb = subst_proc_impl(x.body, target, q, q_names, q_pvs, supply);
          if (!nb) return std::nullopt;
          return proc::output(x.subject, x.payload, *nb, pos);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          auto l = subst_proc_impl(x.left, target, q, q_names, q_pvs, supply);
          if (!l) return std::nullopt;
          auto r = subst_proc_impl(x.right, target, q, q_names, q_pvs, supply);
          if (!r) return std::nullopt;
          return proc::par(*l, *r, pos);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          std::string channel = x.channel;
          Proc body = x.body;
          bool captures = q_names.count(Name::endpoint(channel, Polarity::kPlus)) ||
                          q_names.count(Name::endpoint(channel, Polarity::kMinus));
          if (captures && has_free_proc_var(body, target)) {
            if (!supply) return std::nullopt;
            std::string fresh = supply->fresh(channel);
            body = rename_channel(body, channel, fresh);
            channel = fresh;
          }
          auto nb = subst_proc_impl(body, target, q, q_names, q_pvs, supply);
          if (!nb) return std::nullopt;
          return proc::restrict(channel, x.positive, x.negative, *nb, pos);
        } else {
          if (x.var == target) return p;
          std::string var = x.var;
          Proc body = x.body;
          if (q_pvs.count(var) && has_free_proc_var(body, target)) {
            if (!supply) return std::nullopt;
            std::string fresh = supply->fresh(var);
            body = *subst_proc_impl(body, var, proc::var(fresh), {}, {}, supply);
            var = fresh;
          }
          auto nb = subst_proc_impl(body, target, q, q_names, q_pvs, supply);
          if (!nb) return std::nullopt;
          return proc::rec(x.index, var, *nb, pos);
        }
      },
      p->node);
}

struct FreshenEnv {
  std::map<std::string, std::string> vars;
  std::map<std::string, std::string> chans;
  std::map<std::string, std::string> pvs;
};

Name freshen_name(const Name& n, const FreshenEnv& env) {
  const auto& m = n.is_variable() ? env.vars : env.chans;
  auto it = m.find(n.id);
  if (it == m.end()) return n;
  Name r = n;
  r.id = it->second;
  return r;
}

std::string claim(const std::string& id, NameSupply& supply) {
  if (!supply.taken(id)) {
    supply.reserve(id);
    return id;
  }
  return supply.fresh(id);
}

Proc freshen_impl(const Proc& p, FreshenEnv env, NameSupply& supply) {
  const SourcePos pos = p->pos;
  return std::visit(
      [&](const auto& x) -> Proc {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle>) {
          return p;
        } else if constexpr (std::is_same_v<T, ProcVar>) {
          auto it = env.pvs.find(x.name);
          return it == env.pvs.end() ? p : proc::var(it->second, pos);
        } else if constexpr (std::is_same_v<T, Input>) {
          Name subject = freshen_name(x.subject, env);
          std::string b = claim(x.binder, supply);
          env.vars[x.binder] = b;
          return proc::input(subject, b, freshen_impl(x.body, env, supply), pos);
        } else if constexpr (std::is_same_v<T, Output>) {
          Value payload = x.payload;
          if (const auto* n = std::get_if<Name>(&payload)) payload = freshen_name(*n, env);
          return proc::output(freshen_name(x.subject, env), payload,
                              freshen_impl(x.body, env, supply), pos);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          Proc l = freshen_impl(x.left, env, supply);
          return proc::par(l, freshen_impl(x.right, env, supply), pos);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          std::string c = claim(x.channel, supply);
          env.chans[x.channel] = c;
          return proc::restrict(c, x.positive, x.negative, freshen_impl(x.body, env, supply),
                                pos);
        } else {
          std::string v = claim(x.var, supply);
          env.pvs[x.var] = v;
          return proc::rec(x.index, v, freshen_impl(x.body, env, supply), pos);
        }
      },
      p->node);
}

void collect_ftv(const Type& t, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TypeVar>) {
          if (!bound.count(x.name)) out.insert(x.name);
        } else if constexpr (std::is_same_v<T, ActionType>) {
          collect_ftv(x.payload, bound, out);
          collect_ftv(x.continuation, bound, out);
        } else if constexpr (std::is_same_v<T, RecType>) {
          bool inserted = bound.insert(x.var).second;
          collect_ftv(x.body, bound, out);
          if (inserted) bound.erase(x.var);
        }
      },
      t->node);
}

void collect_type_ids(const Type& t, std::set<std::string>& out) {
  if (const auto* v = as<TypeVar>(t)) {
    out.insert(v->name);
  } else if (const auto* a = as<ActionType>(t)) {
    collect_type_ids(a->payload, out);
    collect_type_ids(a->continuation, out);
  } else if (const auto* r = as<RecType>(t)) {
    out.insert(r->var);
    collect_type_ids(r->body, out);
  }
}

Type subst_type_impl(const Type& t, const std::string& var, const Type& s,
                     const std::set<std::string>& s_ftv) {
  return std::visit(
      [&](const auto& x) -> Type {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TypeVar>) {
          return x.name == var ? s : t;
        } else if constexpr (std::is_same_v<T, ActionType>) {
          return ty::action(x.direction, x.obligation, x.capability,
                            subst_type_impl(x.payload, var, s, s_ftv),
                            subst_type_impl(x.continuation, var, s, s_ftv));
        } else if constexpr (std::is_same_v<T, RecType>) {
          if (x.var == var) return t;
          std::string bv = x.var;
          Type body = x.body;
          if (s_ftv.count(bv) && free_type_vars(body).count(var)) {
            std::set<std::string> used = s_ftv;
            collect_type_ids(body, used);
            used.insert(var);
            NameSupply supply(std::move(used));
            std::string fresh = supply.fresh(bv);
            body = subst_type_impl(body, bv, ty::var(fresh), {fresh});
            bv = fresh;
          }
          return ty::rec(x.index, bv, subst_type_impl(body, var, s, s_ftv));
        } else {
          return t;
        }
      },
      t->node);
}

}  // namespace

std::set<Name> free_names(const Proc& p) {
  std::set<Name> bound_vars, out;
  std::set<std::string> bound_chans;
  collect_free_names(p, bound_vars, bound_chans, out);
  return out;
}

std::set<std::string> free_proc_vars(const Proc& p) {
  std::set<std::string> bound, out;
  collect_fpv(p, bound, out);
  return out;
}

std::set<std::string> free_channels(const Proc& p) {
  std::set<std::string> out;
  for (const auto& n : free_names(p)) {
    if (n.is_endpoint()) out.insert(n.id);
  }
  return out;
}

std::set<std::string> all_identifiers(const Proc& p) {
  std::set<std::string> out;
  collect_ids(p, out);
  return out;
}

std::optional<Proc> subst_name(const Proc& p, const std::string& var,
                               const Value& replacement) {
  return subst_name_impl(p, var, replacement, nullptr);
}

std::optional<Proc> subst_proc(const Proc& p, const std::string& x, const Proc& q) {
  return subst_proc_impl(p, x, q, free_names(q), free_proc_vars(q), nullptr);
}

Proc subst_name_renaming(const Proc& p, const std::string& var, const Value& replacement,
                         NameSupply& supply) {
  return *subst_name_impl(p, var, replacement, &supply);
}

Proc subst_proc_renaming(const Proc& p, const std::string& x, const Proc& q,
                         NameSupply& supply) {
  return *subst_proc_impl(p, x, q, free_names(q), free_proc_vars(q), &supply);
}

Proc rename_channel(const Proc& p, const std::string& from, const std::string& to) {
  auto rn = [&](const Name& n) {
    return n.is_endpoint() && n.id == from ? Name::endpoint(to, n.polarity) : n;
  };
  const SourcePos pos = p->pos;
  return std::visit(
      [&](const auto& x) -> Proc {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle> || std::is_same_v<T, ProcVar>) {
          return p;
        } else if constexpr (std::is_same_v<T, Input>) {
          return proc::input(rn(x.subject), x.binder, rename_channel(x.body, from, to), pos);
        } else if constexpr (std::is_same_v<T, Output>) {
          Value payload = x.payload;
          if (const auto* n = std::get_if<Name>(&payload)) payload = rn(*n);
          return proc::output(rn(x.subject), payload, rename_channel(x.body, from, to), pos);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return proc::par(rename_channel(x.left, from, to), rename_channel(x.right, from, to),
                           pos);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          if (x.channel == from) return p;
          return proc::restrict(x.channel, x.positive, x.negative,
                                rename_channel(x.body, from, to), pos);
        } else {
          return proc::rec(x.index, x.var, rename_channel(x.body, from, to), pos);
        }
      },
      p->node);
}

Proc freshen(const Proc& p) {
  NameSupply supply;
  for (const auto& n : free_names(p)) supply.reserve(n.id);
  for (const auto& x : free_proc_vars(p)) supply.reserve(x);
  return freshen_impl(p, {}, supply);
}

std::set<std::string> free_type_vars(const Type& t) {
  std::set<std::string> bound, out;
  collect_ftv(t, bound, out);
  return out;
}

Type subst_type(const Type& t, const std::string& var, const Type& s) {
  return subst_type_impl(t, var, s, free_type_vars(s));
}

}  // namespace sessprog
