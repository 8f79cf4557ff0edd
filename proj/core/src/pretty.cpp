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

#include "sessprog/pretty.hpp"

namespace sessprog {

std::string to_string(const Name& n) {
  if (n.is_variable()) return n.id;
  return n.id + (n.polarity == Polarity::kPlus ? "+" : "-");
}

std::string to_string(const Value& v) {
  if (const auto* n = std::get_if<Name>(&v)) return to_string(*n);
  return std::to_string(std::get<Literal>(v).value);
}

std::string to_string(const Index& i) {
  return i.is_infinite() ? "inf" : std::to_string(i.value());
}

std::string to_string(const Priority& p) {
  switch (p.kind()) {
    case Priority::Kind::kConst:
      return std::to_string(p.value());
    case Priority::Kind::kVar:
      return p.name();
    case Priority::Kind::kInfinity:
      return "inf";
  }
  return {};
}

namespace {

void print_type(const Type& t, std::string& out);

void print_payload(const Type& t, std::string& out) {
  bool compound = as<ActionType>(t) || as<RecType>(t);
  if (compound) out += '(';
  print_type(t, out);
  if (compound) out += ')';
}

void print_type(const Type& t, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EndType>) {
          out += "end";
        } else if constexpr (std::is_same_v<T, TypeVar>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, ActionType>) {
          out += x.direction == Direction::kIn ? "?[" : "![";
          out += to_string(x.obligation);
          out += ',';
          out += to_string(x.capability);
          out += "] ";
          print_payload(x.payload, out);
          out += " . ";
          print_type(x.continuation, out);
        } else if constexpr (std::is_same_v<T, RecType>) {
          out += "rec[" + to_string(x.index) + "] " + x.var + ". ";
          print_type(x.body, out);
        } else {
          out += x.name;
        }
      },
      t->node);
}

void print_proc(const Proc& p, std::string& out);

// Continuations of prefixes, restrictions and recursions bind tighter
// than "|", so a parallel body needs parentheses.
void print_guarded(const Proc& p, std::string& out) {
  bool paren = as<Parallel>(p) != nullptr;
  if (paren) out += '(';
  print_proc(p, out);
  if (paren) out += ')';
}

void print_proc(const Proc& p, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Idle>) {
          out += '0';
        } else if constexpr (std::is_same_v<T, ProcVar>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, Input>) {
          out += to_string(x.subject) + "?(" + x.binder + ").";
          print_guarded(x.body, out);
        } else if constexpr (std::is_same_v<T, Output>) {
          out += to_string(x.subject) + "!" + to_string(x.payload) + ".";
          print_guarded(x.body, out);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          // "|" is right-associative.
          print_guarded(x.left, out);
          out += " | ";
          print_proc(x.right, out);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          out += "new " + x.channel;
          if (x.positive) {
            out += " : ";
            print_type(x.positive, out);
            out += " ~ ";
            print_type(x.negative, out);
            out += " . ";
          } else {
            out += '.';
          }
          print_guarded(x.body, out);
        } else {
          out += "rec[" + to_string(x.index) + "] " + x.var + ".";
          print_guarded(x.body, out);
        }
      },
      p->node);
}

}  // namespace

std::string pretty(const Proc& p) {
  std::string out;
  print_proc(p, out);
  return out;
}

std::string pretty(const Type& t) {
  std::string out;
  print_type(t, out);
  return out;
}

}  // namespace sessprog
