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

// Abstract syntax for processes and priority-annotated session types.
//
// Trees are immutable and shared through shared_ptr<const ...>, so
// substitution and unfolding copy only the spine they touch.

#ifndef SESSPROG_AST_HPP_
#define SESSPROG_AST_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace sessprog {

enum class Polarity : std::uint8_t { kPlus, kMinus };

constexpr Polarity co(Polarity p) {
  return p == Polarity::kPlus ? Polarity::kMinus : Polarity::kPlus;
}

// A name is either an input-bound variable or an endpoint a+ / a-.
struct Name {
  enum class Kind : std::uint8_t { kVariable, kEndpoint };

  Kind kind = Kind::kVariable;
  std::string id;
  Polarity polarity = Polarity::kPlus;  // always kPlus for variables

  static Name variable(std::string id) {
    return Name{Kind::kVariable, std::move(id), Polarity::kPlus};
  }
  static Name endpoint(std::string channel, Polarity p) {
    return Name{Kind::kEndpoint, std::move(channel), p};
  }

  bool is_endpoint() const { return kind == Kind::kEndpoint; }
  bool is_variable() const { return kind == Kind::kVariable; }
  Name peer() const { return endpoint(id, co(polarity)); }

  auto operator<=>(const Name&) const = default;
};

// Recursion index: a natural number or infinity. inf + 1 = inf.
class Index {
 public:
  static constexpr Index finite(std::uint64_t n) { return Index(n, false); }
  static constexpr Index infinity() { return Index(0, true); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }
  // Only meaningful when finite.
  constexpr std::uint64_t value() const { return value_; }

  // The index left after one unfolding. Requires !is_zero().
  constexpr Index predecessor() const {
    return infinite_ ? *this : Index(value_ - 1, false);
  }

  constexpr bool operator==(const Index&) const = default;
  constexpr std::strong_ordering operator<=>(const Index& o) const {
    if (infinite_ || o.infinite_) {
      return static_cast<int>(infinite_) <=> static_cast<int>(o.infinite_);
    }
    return value_ <=> o.value_;
  }

 private:
  constexpr Index(std::uint64_t v, bool inf) : value_(v), infinite_(inf) {}
  std::uint64_t value_;
  bool infinite_;
};

// Priority term: a constant, a symbolic variable, or infinity. Infinity
// is never written by users; it only comes out of obligation().
class Priority {
 public:
  enum class Kind : std::uint8_t { kConst, kVar, kInfinity };

  static Priority constant(std::uint64_t n) { return Priority(Kind::kConst, n, {}); }
  static Priority variable(std::string name) {
    return Priority(Kind::kVar, 0, std::move(name));
  }
  static Priority infinity() { return Priority(Kind::kInfinity, 0, {}); }

  Kind kind() const { return kind_; }
  bool is_const() const { return kind_ == Kind::kConst; }
  bool is_var() const { return kind_ == Kind::kVar; }
  bool is_infinite() const { return kind_ == Kind::kInfinity; }
  std::uint64_t value() const { return value_; }
  const std::string& name() const { return name_; }

  auto operator<=>(const Priority&) const = default;

 private:
  Priority(Kind k, std::uint64_t v, std::string n)
      : kind_(k), value_(v), name_(std::move(n)) {}
  Kind kind_;
  std::uint64_t value_;
  std::string name_;
};

struct SourcePos {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Session types

enum class Direction : std::uint8_t { kIn, kOut };

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct EndType {};
struct TypeVar {
  std::string name;
};
struct ActionType {
  Direction direction;
  Priority obligation;
  Priority capability;
  Type payload;
  Type continuation;
};
struct RecType {
  Index index;
  std::string var;
  Type body;
};
// Base payload sort ("int"); only legal as a payload.
struct BaseType {
  std::string name;
};

struct TypeNode {
  std::variant<EndType, TypeVar, ActionType, RecType, BaseType> node;
};

namespace ty {
Type end();
Type var(std::string name);
Type in(Priority obligation, Priority capability, Type payload, Type cont);
Type out(Priority obligation, Priority capability, Type payload, Type cont);
Type action(Direction d, Priority obligation, Priority capability, Type payload,
            Type cont);
Type rec(Index index, std::string var, Type body);
Type base(std::string name = "int");
}  // namespace ty

template <class T>
const T* as(const Type& t) {
  return std::get_if<T>(&t->node);
}

// ---------------------------------------------------------------------------
// Processes

struct ProcNode;
using Proc = std::shared_ptr<const ProcNode>;

struct Literal {
  std::int64_t value;
  auto operator<=>(const Literal&) const = default;
};
using Value = std::variant<Name, Literal>;

struct Idle {};
struct ProcVar {
  std::string name;
};
struct Input {
  Name subject;
  std::string binder;
  Proc body;
};
struct Output {
  Name subject;
  Value payload;
  Proc body;
};
struct Parallel {
  Proc left;
  Proc right;
};
// Session restriction. The endpoint types are optional annotations; they
// are either both present or both absent.
struct Restriction {
  std::string channel;
  Type positive;
  Type negative;
  Proc body;
};
struct Recursion {
  Index index;
  std::string var;
  Proc body;
};

struct ProcNode {
  std::variant<Idle, ProcVar, Input, Output, Parallel, Restriction, Recursion> node;
  SourcePos pos;
};

namespace proc {
Proc idle(SourcePos pos = {});
Proc var(std::string name, SourcePos pos = {});
Proc input(Name subject, std::string binder, Proc body, SourcePos pos = {});
Proc output(Name subject, Value payload, Proc body, SourcePos pos = {});
Proc par(Proc left, Proc right, SourcePos pos = {});
Proc restrict(std::string channel, Type positive, Type negative, Proc body,
              SourcePos pos = {});
Proc rec(Index index, std::string var, Proc body, SourcePos pos = {});
}  // namespace proc

template <class T>
const T* as(const Proc& p) {
  return std::get_if<T>(&p->node);
}

struct Program {
  Proc process;
  std::map<std::string, Type> aliases;
};

// Exact structural equality (binder names must coincide).
bool same(const Type& a, const Type& b);
bool same(const Proc& a, const Proc& b);

}  // namespace sessprog

#endif  // SESSPROG_AST_HPP_
