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

#include "generators.hpp"

#include <algorithm>
#include <utility>

#include "sessprog/parser.hpp"
#include "sessprog/pretty.hpp"
#include "sessprog/syntax.hpp"
#include "sessprog/types.hpp"

namespace sessprog::testing {

namespace {

std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }
bool chance(Rng& rng, int percent) { return static_cast<int>(rng() % 100) < percent; }

class Shapes {
 public:
  Shapes(Rng& rng, const ShapeConfig& config) : rng_(rng), config_(config) {}

  Proc go(int depth, const std::vector<std::string>& pvars,
          const std::vector<std::string>& vars) {
    ++nodes_;
    bool leaf = depth <= 0 || nodes_ >= config_.max_nodes;
    if (leaf) {
      if (!pvars.empty() && chance(rng_, 50)) return proc::var(pick(pvars));
      return proc::idle();
    }
    std::vector<std::pair<int, int>> weights = {{0, 1}, {2, 3}, {3, 3}, {4, 2}, {6, 2}};
    if (!pvars.empty()) weights.push_back({1, 2});
    if (config_.allow_new) weights.push_back({5, 1});
    int total = 0;
    for (auto [k, w] : weights) total += w;
    int r = static_cast<int>(below(rng_, total));
    int kind = 0;
    for (auto [k, w] : weights) {
      if (r < w) {
        kind = k;
        break;
      }
      r -= w;
    }
    switch (kind) {
      case 1: return proc::var(pick(pvars));
      case 2: {
        std::string x = "x" + std::to_string(binder_++);
        auto inner = vars;
        inner.push_back(x);
        return proc::input(endpoint(), x, go(depth - 1, pvars, inner));
      }
      case 3: return proc::output(endpoint(), payload(vars), go(depth - 1, pvars, vars));
      case 4: {
        Proc l = go(depth - 1, pvars, vars);
        return proc::par(l, go(depth - 1, pvars, vars));
      }
      case 5:
        return proc::restrict(channel(), nullptr, nullptr, go(depth - 1, pvars, vars));
      case 6: {
        static const std::vector<std::string> kVars = {"X", "Y", "Z"};
        std::string x = pick(kVars);
        auto inner = pvars;
        if (std::find(inner.begin(), inner.end(), x) == inner.end()) inner.push_back(x);
        Index idx = config_.user ? Index::infinity()
                                 : Index::finite(below(rng_, config_.max_index + 1));
        return proc::rec(idx, x, go(depth - 1, inner, vars));
      }
      default: return proc::idle();
    }
  }

 private:
  std::string pick(const std::vector<std::string>& v) { return v[below(rng_, v.size())]; }
  std::string channel() {
    static const std::vector<std::string> kChannels = {"a", "b", "c"};
    return pick(kChannels);
  }
  Name endpoint() {
    return Name::endpoint(channel(), chance(rng_, 50) ? Polarity::kPlus : Polarity::kMinus);
  }
  Value payload(const std::vector<std::string>& vars) {
    int r = static_cast<int>(below(rng_, 10));
    if (r < 4 || (r >= 7 && vars.empty())) {
      return Literal{static_cast<std::int64_t>(below(rng_, 10))};
    }
    if (r < 7) return endpoint();
    return Name::variable(pick(vars));
  }

  Rng& rng_;
  const ShapeConfig& config_;
  int nodes_ = 0;
  int binder_ = 0;
};

struct Event {
  int channel;
  bool plus_sends;
  int payload_kind;  // 0 literal, 1 received int, 2 fresh end channel
  int var_source;    // event whose binder is forwarded when payload_kind == 1
};

struct Schedule {
  int threads;
  std::vector<std::pair<int, int>> owners;  // channel -> (plus thread, minus thread)
  std::vector<Event> events;
  std::vector<std::vector<int>> order;  // per thread, event indices
};

std::string chan(int c) { return "c" + std::to_string(c + 1); }

Schedule make_schedule(Rng& rng) {
  Schedule s;
  s.threads = 2 + static_cast<int>(below(rng, 2));
  int channels = 1 + static_cast<int>(below(rng, 3));
  for (int c = 0; c < channels; ++c) {
    int p = static_cast<int>(below(rng, s.threads));
    int q = static_cast<int>(below(rng, s.threads - 1));
    if (q >= p) ++q;
    s.owners.push_back({p, q});
  }
  int n = 1 + static_cast<int>(below(rng, 5));
  s.order.assign(s.threads, {});
  // Per thread, received int events usable as forwarded payloads.
  std::vector<std::vector<int>> received(s.threads);
  for (int j = 0; j < n; ++j) {
    Event e{static_cast<int>(below(rng, channels)), chance(rng, 50), 0, -1};
    auto [p, q] = s.owners[e.channel];
    int sender = e.plus_sends ? p : q;
    int receiver = e.plus_sends ? q : p;
    int r = static_cast<int>(below(rng, 100));
    if (r < 25 && !received[sender].empty()) {
      e.payload_kind = 1;
      e.var_source = received[sender][below(rng, received[sender].size())];
    } else if (r >= 85) {
      e.payload_kind = 2;
    }
    if (e.payload_kind != 2) received[receiver].push_back(j);
    s.events.push_back(e);
    s.order[p].push_back(j);
    s.order[q].push_back(j);
  }
  return s;
}

bool mutate(Rng& rng, Schedule& s) {
  std::vector<std::pair<int, std::size_t>> sites;
  for (int t = 0; t < s.threads; ++t) {
    for (std::size_t i = 0; i + 1 < s.order[t].size(); ++i) {
      if (s.events[s.order[t][i]].channel != s.events[s.order[t][i + 1]].channel) {
        sites.push_back({t, i});
      }
    }
  }
  if (sites.empty()) return false;
  auto [t, i] = sites[below(rng, sites.size())];
  std::swap(s.order[t][i], s.order[t][i + 1]);
  return true;
}

Proc build(const Schedule& s) {
  int channels = static_cast<int>(s.owners.size());
  std::vector<Type> plus_types(channels, ty::end());
  for (int j = static_cast<int>(s.events.size()) - 1; j >= 0; --j) {
    const Event& e = s.events[j];
    Type payload = e.payload_kind == 2 ? ty::end() : ty::base();
    Type& t = plus_types[e.channel];
    t = ty::action(e.plus_sends ? Direction::kOut : Direction::kIn,
                   Priority::variable("p" + std::to_string(j + 1)),
                   Priority::variable("q" + std::to_string(j + 1)), payload, t);
  }
  Proc all;
  for (int t = s.threads - 1; t >= 0; --t) {
    Proc body = proc::idle();
    for (auto it = s.order[t].rbegin(); it != s.order[t].rend(); ++it) {
      int j = *it;
      const Event& e = s.events[j];
      bool is_plus = s.owners[e.channel].first == t;
      Name subject =
          Name::endpoint(chan(e.channel), is_plus ? Polarity::kPlus : Polarity::kMinus);
      bool sends = is_plus == e.plus_sends;
      if (!sends) {
        body = proc::input(subject, "x" + std::to_string(j + 1), body);
      } else if (e.payload_kind == 0) {
        body = proc::output(subject, Literal{j + 1}, body);
      } else if (e.payload_kind == 1) {
        body = proc::output(subject, Name::variable("x" + std::to_string(e.var_source + 1)),
                            body);
      } else {
        std::string d = "d" + std::to_string(j + 1);
        body = proc::restrict(d, nullptr, nullptr,
                              proc::output(subject, Name::endpoint(d, Polarity::kPlus), body));
      }
    }
    all = all ? proc::par(body, all) : body;
  }
  for (int c = channels - 1; c >= 0; --c) {
    all = proc::restrict(chan(c), plus_types[c], syntactic_dual(plus_types[c]), all);
  }
  return all;
}

bool closed(const Proc& p) { return free_names(p).empty() && free_proc_vars(p).empty(); }

std::string index_text(Index i) { return to_string(i); }

Priority random_priority(Rng& rng) {
  static const char* kVars[] = {"a", "b", "c"};
  if (chance(rng, 50)) return Priority::constant(below(rng, 4));
  return Priority::variable(kVars[below(rng, 3)]);
}

Type type_go(Rng& rng, int depth, bool allow_inf, std::vector<std::string>& bound,
             bool guarded) {
  int r = static_cast<int>(below(rng, 10));
  if (depth <= 0 || r < 2) {
    if (guarded && !bound.empty() && chance(rng, 60)) return ty::var(bound[below(rng, bound.size())]);
    return ty::end();
  }
  if (r < 4 && guarded && !bound.empty()) return ty::var(bound[below(rng, bound.size())]);
  if (r < 8) {
    Type payload;
    int k = static_cast<int>(below(rng, 3));
    if (k == 0) {
      payload = ty::base();
    } else if (k == 1) {
      payload = ty::end();
    } else {
      std::vector<std::string> none;
      payload = type_go(rng, depth - 2, allow_inf, none, false);
    }
    return ty::action(chance(rng, 50) ? Direction::kIn : Direction::kOut, random_priority(rng),
                      random_priority(rng), payload,
                      type_go(rng, depth - 1, allow_inf, bound, true));
  }
  std::string v = "t" + std::to_string(bound.size());
  Index idx = allow_inf && chance(rng, 30) ? Index::infinity() : Index::finite(below(rng, 4));
  bound.push_back(v);
  Type body = type_go(rng, depth - 1, allow_inf, bound, false);
  bound.pop_back();
  return ty::rec(idx, v, body);
}

}  // namespace

Type random_type(Rng& rng, int depth, bool allow_inf) {
  std::vector<std::string> bound;
  return type_go(rng, depth, allow_inf, bound, true);
}

Proc random_process(Rng& rng, const ShapeConfig& config) {
  Shapes shapes(rng, config);
  return shapes.go(config.max_depth, config.open_vars, {});
}

TypedCase schedule_case(Rng& rng, bool mutated) {
  for (;;) {
    Schedule s = make_schedule(rng);
    if (mutated && !mutate(rng, s)) continue;
    Proc p = build(s);
    if (!closed(p)) continue;
    return TypedCase{mutated ? "schedule-mutant" : "schedule", p,
                     Index::finite(below(rng, 4)), !mutated};
  }
}

TypedCase pipeline_case(int k, Index index) {
  std::string i = index_text(index);
  std::string text;
  for (int c = 1; c <= k; ++c) {
    text += "new c" + std::to_string(c) + " : rec[" + i + "] t. ![" + std::to_string(c) + "," +
            std::to_string(k + 1 - c) + "] int . t .\n";
  }
  text += "(rec[" + i + "] S. c1+!1. S\n";
  for (int c = 1; c < k; ++c) {
    text += " | rec[" + i + "] X" + std::to_string(c) + ". c" + std::to_string(c) +
            "-?(x). c" + std::to_string(c + 1) + "+!x. X" + std::to_string(c) + "\n";
  }
  text += " | rec[" + i + "] Z. c" + std::to_string(k) + "-?(y). Z)\n";
  return TypedCase{"pipeline-" + std::to_string(k), parse_program(text).process, index, true};
}

TypedCase forwarder_case(Index index) {
  std::string i = index_text(index);
  std::string text =
      "new a : rec[" + i + "] t. ![beta,alpha] end . t .\n"
      "new b : rec[" + i + "] u. ![gamma,delta] end . u .\n"
      "(  rec[" + i + "] X. a-?(x). b+!x. X\n"
      " | rec[" + i + "] Y. new c. a+!c+. Y\n"
      " | rec[" + i + "] Z. b-?(y). Z )\n";
  return TypedCase{"forwarder", parse_program(text).process, index, true};
}

std::vector<TypedCase> typed_corpus(Rng& rng, std::size_t count) {
  std::vector<TypedCase> out;
  while (out.size() < count) {
    int r = static_cast<int>(below(rng, 10));
    if (r < 7) {
      out.push_back(schedule_case(rng, false));
    } else if (r < 9) {
      out.push_back(pipeline_case(1 + static_cast<int>(below(rng, 3)),
                                  Index::finite(below(rng, 4))));
    } else {
      out.push_back(forwarder_case(Index::finite(below(rng, 3))));
    }
  }
  return out;
}

std::vector<TypedCase> user_corpus(Rng& rng, std::size_t count) {
  std::vector<TypedCase> out;
  while (out.size() < count) {
    int r = static_cast<int>(below(rng, 10));
    TypedCase c = r < 5   ? schedule_case(rng, false)
                  : r < 8 ? schedule_case(rng, true)
                  : r < 9 ? pipeline_case(1 + static_cast<int>(below(rng, 3)), Index::infinity())
                          : forwarder_case(Index::infinity());
    c.index = Index::infinity();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace sessprog::testing
