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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sessprog/measure.hpp"
#include "sessprog/parser.hpp"
#include "sessprog/pretty.hpp"
#include "sessprog/progress.hpp"
#include "sessprog/semantics.hpp"
#include "sessprog/typecheck.hpp"
#include "sessprog/types.hpp"

namespace sessprog::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string command;
  std::string file;
  std::string judgment_index;
  std::uint64_t approx = 2;
  bool approx_given = false;
  std::size_t max_states = kDefaultMaxStates;
  std::size_t max_steps = 1000;
  bool json = false;
  std::uint64_t seed = 0;
  std::uint64_t approx_target = 0;  // `approx N`
  std::string type1, type2;         // `dual`
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Index parse_index(const std::string& s) {
  if (s == "inf") return Index::infinity();
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used == s.size()) return Index::finite(v);
  } catch (const std::exception&) {
  }
  throw UsageError("invalid index '" + s + "' (expected a natural number or inf)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json position(const SourcePos& p) { return json{{"line", p.line}, {"column", p.column}}; }

json priority(const Priority& p) {
  if (p.is_const()) return p.value();
  if (p.is_var()) return p.name();
  return "inf";
}

json index_json(const Index& i) {
  if (i.is_infinite()) return "inf";
  return i.value();
}

json constraint(const Constraint& c) {
  return json{{"lhs", priority(c.lhs)},
              {"rhs", priority(c.rhs)},
              {"rule", c.rule},
              {"position", position(c.pos)}};
}

json constraints(const std::vector<Constraint>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(constraint(c));
  return arr;
}

std::string show(const Constraint& c) { return to_string(c.lhs) + " < " + to_string(c.rhs); }

std::string show_chain(const std::vector<Constraint>& cs) {
  std::string out;
  for (const auto& c : cs) {
    if (!out.empty()) out += ", ";
    out += show(c);
  }
  return out;
}

json assignment(const Assignment& a) {
  json obj = json::object();
  for (const auto& [k, v] : a) obj[k] = v;
  return obj;
}

json diagnostics(const Verdict& v) {
  json arr = json::array();
  for (const auto& d : v.diagnostics) {
    json j{{"kind", to_string(d.kind)},
           {"rule", d.rule},
           {"position", position(d.pos)},
           {"message", d.message},
           {"constraints", json::array()}};
    if (d.kind == DiagnosticKind::kUnsatisfiableConstraints) {
      j["constraints"] = constraints(v.check.constraints);
      j["witness"] = constraints(v.solution.witness);
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string kind_name(const RedexLabel& l) {
  return l.kind == RedexLabel::Kind::kComm ? "comm" : "rec";
}
std::string subject_name(const RedexLabel& l) {
  return l.kind == RedexLabel::Kind::kComm ? l.channel : l.rec_var;
}

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json step_json(std::size_t i, const RedexLabel& l, const CanonState& s) {
  return json{{"step", i},
              {"kind", kind_name(l)},
              {"channel", subject_name(l)},
              {"state", pretty(to_process(s))},
              {"hash", hex(state_hash(s))}};
}

void write_step(std::ostream& out, std::size_t i, const RedexLabel& l, const CanonState& s) {
  out << i << ' ' << kind_name(l) << ' ' << subject_name(l) << ' ' << pretty(to_process(s))
      << '\n';
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// Processes with inf indices are explored through an approximant.
Proc bounded(const Proc& p, const Options& o) {
  if (is_finite_process(p)) return p;
  return approximant_lenient(p, Index::finite(o.approx));
}

Program load(const Options& o) { return parse_program(read_file(o.file)); }

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  Program prog = load(o);
  Index idx = o.judgment_index.empty() ? Index::infinity() : parse_index(o.judgment_index);
  Verdict v = check_closed(prog.process, idx);
  if (o.json) {
    json j{{"command", "check"},
           {"file", o.file},
           {"judgmentIndex", index_json(idx)},
           {"accepted", v.ok},
           {"constraints", constraints(v.check.constraints)},
           {"assignment", v.ok ? assignment(v.solution.assignment) : json(nullptr)},
           {"diagnostics", diagnostics(v)}};
    emit(out, j);
  } else if (v.ok) {
    out << "accept\n";
    for (const auto& c : v.check.constraints) out << "  constraint " << show(c) << '\n';
    for (const auto& [k, val] : v.solution.assignment) out << "  " << k << " = " << val << '\n';
  } else {
    out << "reject\n";
    if (!v.solution.witness.empty()) {
      out << "  cycle witness: " << show_chain(v.solution.witness) << '\n';
    }
  }
  for (const auto& d : v.diagnostics) {
    err << o.file << ':' << d.pos.line << ':' << d.pos.column << ": " << to_string(d.kind)
        << " [" << d.rule << "] " << d.message << '\n';
  }
  return v.ok ? kOk : kNegative;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream&) {
  Program prog = load(o);
  CanonState s = canonicalize(prog.process);
  std::mt19937_64 rng(o.seed);
  json steps = json::array();
  if (!o.json) out << "0 init - " << pretty(to_process(s)) << '\n';
  std::size_t i = 0;
  bool limited = false;
  for (;;) {
    std::vector<Transition> next = step(s);
    if (next.empty()) break;
    if (i == o.max_steps) {
      limited = true;
      break;
    }
    Transition& t = next[rng() % next.size()];
    ++i;
    s = std::move(t.target);
    if (o.json) {
      steps.push_back(step_json(i, t.label, s));
    } else {
      write_step(out, i, t.label, s);
    }
  }
  if (o.json) {
    emit(out, json{{"command", "run"},
                   {"file", o.file},
                   {"seed", o.seed},
                   {"initial", pretty(to_process(canonicalize(prog.process)))},
                   {"steps", steps},
                   {"normalForm", !limited},
                   {"truncated", limited}});
  } else {
    out << (limited ? "stopped at the step limit\n" : "normal form\n");
  }
  return limited ? kLimit : kOk;
}

int cmd_explore(const Options& o, std::ostream& out, std::ostream&) {
  Program prog = load(o);
  StateGraph g = reachable(canonicalize(bounded(prog.process, o)), o.max_states);
  std::size_t edges = 0, normal = 0;
  for (const auto& e : g.edges) {
    edges += e.size();
    normal += e.empty() ? 1 : 0;
  }
  if (g.truncated) normal = 0;
  if (o.json) {
    emit(out, json{{"command", "explore"},
                   {"file", o.file},
                   {"states", g.states.size()},
                   {"edges", edges},
                   {"normalForms", normal},
                   {"truncated", g.truncated}});
  } else {
    out << "states       " << g.states.size() << '\n'
        << "edges        " << edges << '\n'
        << "normal forms " << normal << '\n'
        << "truncated    " << (g.truncated ? "yes" : "no") << '\n';
  }
  return g.truncated ? kLimit : kOk;
}

json violation_json(const ProgressViolation& v) {
  json trace = json::array();
  for (std::size_t i = 0; i < v.labels.size(); ++i) {
    trace.push_back(step_json(i + 1, v.labels[i], v.trace[i + 1]));
  }
  return json{{"endpoint", to_string(v.endpoint)},
              {"prefix", v.output ? "output" : "input"},
              {"initial", pretty(to_process(v.trace.front()))},
              {"state", pretty(to_process(v.trace.back()))},
              {"trace", trace}};
}

void write_violation(std::ostream& out, const ProgressViolation& v) {
  out << "  stuck " << (v.output ? "output" : "input") << " on " << to_string(v.endpoint)
      << '\n';
  out << "  0 init - " << pretty(to_process(v.trace.front())) << '\n';
  for (std::size_t i = 0; i < v.labels.size(); ++i) {
    out << "  ";
    write_step(out, i + 1, v.labels[i], v.trace[i + 1]);
  }
}

int cmd_progress(const Options& o, std::ostream& out, std::ostream& err) {
  Program prog = load(o);
  ProgressVerdict v = verify_static(prog.process);
  const Verdict& typing = *v.typing;
  json evidence;
  if (v.status == ProgressStatus::kVerifiedStatic) {
    evidence = json{{"assignment", assignment(typing.solution.assignment)},
                    {"constraints", constraints(typing.check.constraints)}};
  } else {
    evidence = json{{"diagnostics", diagnostics(typing)}};
  }
  if (o.json) {
    emit(out, json{{"command", "progress"},
                   {"file", o.file},
                   {"status", to_string(v.status)},
                   {"evidence", evidence},
                   {"statesExplored", 0},
                   {"truncated", false}});
  } else {
    out << to_string(v.status) << '\n';
    for (const auto& [k, val] : typing.solution.assignment) {
      out << "  " << k << " = " << val << '\n';
    }
  }
  for (const auto& d : typing.diagnostics) {
    err << o.file << ':' << d.pos.line << ':' << d.pos.column << ": " << to_string(d.kind)
        << " [" << d.rule << "] " << d.message << '\n';
  }
  return v.status == ProgressStatus::kVerifiedStatic ? kOk : kNegative;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream&) {
  Program prog = load(o);
  ProgressVerdict v = oracle_dynamic(prog.process, o.approx, o.max_states);
  if (o.json) {
    json evidence = v.violation ? violation_json(*v.violation) : json{{"approx", o.approx}};
    emit(out, json{{"command", "oracle"},
                   {"file", o.file},
                   {"status", to_string(v.status)},
                   {"evidence", evidence},
                   {"statesExplored", v.states_explored},
                   {"truncated", v.truncated}});
  } else {
    out << to_string(v.status) << " (approx " << o.approx << ", " << v.states_explored
        << " states" << (v.truncated ? ", truncated" : "") << ")\n";
    if (v.violation) write_violation(out, *v.violation);
  }
  switch (v.status) {
    case ProgressStatus::kViolatedDynamic: return kNegative;
    case ProgressStatus::kUnknown: return kLimit;
    default: return kOk;
  }
}

void collect_binders(const Proc& p, std::vector<const Recursion*>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Input> || std::is_same_v<T, Output> ||
                      std::is_same_v<T, Restriction>) {
          collect_binders(x.body, out);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          collect_binders(x.left, out);
          collect_binders(x.right, out);
        } else if constexpr (std::is_same_v<T, Recursion>) {
          out.push_back(&x);
          collect_binders(x.body, out);
        }
      },
      p->node);
}

int cmd_measure(const Options& o, std::ostream& out, std::ostream&) {
  Program prog = load(o);
  Proc p = bounded(prog.process, o);
  MeasureValue e = emeasure(p);
  std::vector<const Recursion*> binders;
  collect_binders(p, binders);
  if (o.json) {
    json rows = json::array();
    for (const auto* r : binders) {
      rows.push_back(json{{"var", r->var},
                          {"index", index_json(r->index)},
                          {"v", vcount(r->body, r->var).str()}});
    }
    emit(out, json{{"command", "measure"}, {"file", o.file}, {"E", e.str()}, {"binders", rows}});
    return kOk;
  }
  out << "E = " << e.str() << '\n';
  if (binders.empty()) return kOk;
  std::size_t w = 3;
  for (const auto* r : binders) w = std::max(w, r->var.size());
  out << std::left << std::setw(static_cast<int>(w)) << "var" << "  " << std::setw(5) << "index"
      << "  V(body)\n";
  for (const auto* r : binders) {
    out << std::left << std::setw(static_cast<int>(w)) << r->var << "  " << std::setw(5)
        << to_string(r->index) << "  " << vcount(r->body, r->var).str() << '\n';
  }
  return kOk;
}

int cmd_approx(const Options& o, std::ostream& out, std::ostream&) {
  Program prog = load(o);
  Proc q = approximant(prog.process, Index::finite(o.approx_target));
  if (o.json) {
    emit(out, json{{"command", "approx"},
                   {"file", o.file},
                   {"index", o.approx_target},
                   {"process", pretty(q)}});
  } else {
    out << pretty(q) << '\n';
  }
  return kOk;
}

int cmd_dual(const Options& o, std::ostream& out, std::ostream&) {
  Type t = parse_type(o.type1);
  Type s = parse_type(o.type2);
  for (const Type& x : {t, s}) {
    auto wf = well_formed(x);
    if (!wf.ok) throw UsageError("ill-formed type: " + wf.message);
  }
  DualityResult strict = dual_strict(t, s);
  bool full = dual_full(t, s);
  if (o.json) {
    json j{{"command", "dual"}, {"strict", strict.ok}, {"full", full}};
    if (!strict.ok) j["mismatch"] = json{{"path", strict.path}, {"reason", strict.reason}};
    emit(out, j);
  } else {
    out << "strict " << (strict.ok ? "yes" : "no");
    if (!strict.ok) out << " (at " << strict.path << ": " << strict.reason << ")";
    out << "\nfull   " << (full ? "yes" : "no") << '\n';
  }
  return full ? kOk : kNegative;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Workbench for binary sessions with priority-annotated session types",
               "sessprog"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--judgment-index", o.judgment_index,
                 "Judgment index for check (natural or inf, default inf)");
  auto* approx_opt =
      app.add_option("--approx", o.approx, "Index replacing inf recursions (default 2)");
  app.add_option("--max-states", o.max_states, "State bound for exploration (default 100000)");
  app.add_option("--max-steps", o.max_steps, "Step bound for run (default 1000)");
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--seed", o.seed, "Seed for the redex choice of run (default 0)");

  struct Sub {
    const char* name;
    const char* help;
  };
  for (const Sub& s : {Sub{"check", "Type-check a closed program"},
                       Sub{"run", "Print one pseudo-random reduction sequence"},
                       Sub{"explore", "Explore the reachable state space"},
                       Sub{"progress", "Static progress verdict from the 0-approximant"},
                       Sub{"oracle", "Dynamic progress check on a finite approximant"},
                       Sub{"measure", "Termination measure of a finite process"}}) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("file", o.file, "Program file (.ssp)")->required();
    sub->callback([&o, name = std::string(s.name)] { o.command = name; });
  }
  auto* approx = app.add_subcommand("approx", "Print the N-approximant of a user process");
  approx->add_option("N", o.approx_target, "Index")->required();
  approx->add_option("file", o.file, "Program file (.ssp)")->required();
  approx->callback([&o] { o.command = "approx"; });
  auto* dual = app.add_subcommand("dual", "Decide duality of two session types");
  dual->add_option("T1", o.type1, "Type")->required();
  dual->add_option("T2", o.type2, "Type")->required();
  dual->callback([&o] { o.command = "dual"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sessprog: " << e.what() << '\n';
    return kParseError;
  }
  o.approx_given = approx_opt->count() > 0;

  try {
    if (o.command == "check") return cmd_check(o, out, err);
    if (o.command == "run") return cmd_run(o, out, err);
    if (o.command == "explore") return cmd_explore(o, out, err);
    if (o.command == "progress") return cmd_progress(o, out, err);
    if (o.command == "oracle") return cmd_oracle(o, out, err);
    if (o.command == "measure") return cmd_measure(o, out, err);
    if (o.command == "approx") return cmd_approx(o, out, err);
    if (o.command == "dual") return cmd_dual(o, out, err);
  } catch (const ParseError& e) {
    err << (o.file.empty() ? "<type>" : o.file) << ':' << e.what() << '\n';
    return kParseError;
  } catch (const UsageError& e) {
    err << "sessprog: " << e.what() << '\n';
    return kParseError;
  } catch (const DepthExceeded& e) {
    err << "sessprog: " << e.what() << '\n';
    return kLimit;
  } catch (const NotUserProcess& e) {
    err << "sessprog: not a user process: " << e.what() << '\n';
    return kNegative;
  } catch (const NotClosed& e) {
    err << "sessprog: " << e.what() << '\n';
    return kNegative;
  } catch (const InfiniteIndex& e) {
    err << "sessprog: " << e.what() << '\n';
    return kNegative;
  }
  return kParseError;
}

}  // namespace sessprog::cli
