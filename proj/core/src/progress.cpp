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

#include "sessprog/progress.hpp"

#include <deque>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_set>

#include "sessprog/pretty.hpp"
#include "sessprog/syntax.hpp"

namespace sessprog {

const char* to_string(ProgressStatus s) {
  switch (s) {
    case ProgressStatus::kVerifiedStatic: return "verified-static";
    case ProgressStatus::kViolatedDynamic: return "violated-dynamic";
    case ProgressStatus::kHoldsDynamicAtBound: return "holds-dynamic-at-bound";
    case ProgressStatus::kUnknown: return "unknown";
  }
  return "?";
}

namespace {

void require_closed(const Proc& p) {
  std::set<Name> fn = free_names(p);
  std::set<std::string> fpv = free_proc_vars(p);
  if (fn.empty() && fpv.empty()) return;
  std::string names;
  for (const auto& n : fn) names += (names.empty() ? "" : ", ") + to_string(n);
  for (const auto& x : fpv) names += (names.empty() ? "" : ", ") + x;
  throw NotClosed("process has free names: " + names);
}

const std::string kWatched = "$";

bool offers(const CanonState& s, const Name& endpoint, bool input) {
  for (const auto& t : s.threads) {
    if (input) {
      if (const auto* in = as<Input>(t); in && in->subject == endpoint) return true;
    } else {
      if (const auto* out = as<Output>(t); out && out->subject == endpoint) return true;
    }
  }
  return false;
}

class Oracle {
 public:
  explicit Oracle(std::size_t max_states) : max_states_(max_states) {}

  bool truncated = false;

  // Can the state without thread `skip`, with the channel of `endpoint`
  // made free, reach a state offering the complementary prefix?
  // nullopt when the search hit the state bound before an answer.
  std::optional<bool> matched(const CanonState& s, std::size_t skip, const Name& endpoint,
                              bool output) {
    const std::string watched = kWatched + endpoint.id;
    CanonState residual;
    for (const auto& d : s.channels) {
      if (d.name != endpoint.id) residual.channels.push_back(d);
    }
    for (std::size_t i = 0; i < s.threads.size(); ++i) {
      if (i != skip) residual.threads.push_back(rename_channel(s.threads[i], endpoint.id, watched));
    }
    CanonState start = canonicalize(to_process(residual));
    Name target = Name::endpoint(watched, co(endpoint.polarity));
    auto key = std::make_tuple(start.key, target.polarity, output);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<bool> found = search(start, target, output);
    if (found) memo_.emplace(std::move(key), *found);
    return found;
  }

 private:
  std::optional<bool> search(const CanonState& start, const Name& target, bool want_input) {
    std::unordered_set<std::string> seen{start.key};
    std::deque<CanonState> queue{start};
    bool cut = false;
    while (!queue.empty()) {
      CanonState s = std::move(queue.front());
      queue.pop_front();
      if (offers(s, target, want_input)) return true;
      for (auto& t : step(s)) {
        if (seen.count(t.target.key)) continue;
        if (seen.size() >= max_states_) {
          cut = true;
          continue;
        }
        seen.insert(t.target.key);
        queue.push_back(std::move(t.target));
      }
    }
    if (cut) {
      truncated = true;
      return std::nullopt;
    }
    return false;
  }

  std::size_t max_states_;
  std::map<std::tuple<std::string, Polarity, bool>, bool> memo_;
};

}  // namespace

ProgressVerdict verify_static(const Proc& p) {
  if (!is_user_process(p)) {
    throw NotUserProcess("process contains a finite recursion index: " + pretty(p));
  }
  require_closed(p);
  ProgressVerdict v;
  Verdict typing = check_closed(approximant(p, Index::finite(0)), Index::finite(0));
  v.status = typing.ok ? ProgressStatus::kVerifiedStatic : ProgressStatus::kUnknown;
  v.typing = std::move(typing);
  return v;
}

ProgressVerdict oracle_dynamic(const Proc& p, std::uint64_t iota, std::size_t max_states) {
  require_closed(p);
  ProgressVerdict v;
  StateGraph g = reachable(canonicalize(approximant_lenient(p, Index::finite(iota))), max_states);
  v.states_explored = g.states.size();
  v.truncated = g.truncated;
  Oracle oracle(max_states);
  for (std::size_t i = 0; i < g.states.size() && !v.violation; ++i) {
    const CanonState& s = g.states[i];
    for (std::size_t t = 0; t < s.threads.size(); ++t) {
      const Name* subject = nullptr;
      bool output = false;
      if (const auto* in = as<Input>(s.threads[t])) {
        subject = &in->subject;
      } else if (const auto* out = as<Output>(s.threads[t])) {
        subject = &out->subject;
        output = true;
      }
      if (!subject || !subject->is_endpoint()) continue;
      if (oracle.matched(s, t, *subject, output).value_or(true)) continue;
      ProgressViolation violation{i, t, *subject, output, {g.states[0]}, {}};
      for (auto& [target, label] : g.path_to(i)) {
        violation.trace.push_back(g.states[target]);
        violation.labels.push_back(std::move(label));
      }
      v.violation = std::move(violation);
      break;
    }
  }
  v.truncated = v.truncated || oracle.truncated;
  if (v.violation) {
    v.status = ProgressStatus::kViolatedDynamic;
  } else if (v.truncated) {
    v.status = ProgressStatus::kUnknown;
  } else {
    v.status = ProgressStatus::kHoldsDynamicAtBound;
  }
  return v;
}

bool normal_form_shape(const CanonState& s) {
  for (const auto& t : s.threads) {
    const auto* r = as<Recursion>(t);
    if (!r || !r->index.is_zero()) return false;
  }
  return true;
}

}  // namespace sessprog
