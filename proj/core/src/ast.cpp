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

#include "sessprog/ast.hpp"

namespace sessprog {

namespace ty {
Type end() {
  static const Type kEnd = std::make_shared<const TypeNode>(TypeNode{EndType{}});
  return kEnd;
}
Type var(std::string name) {
  return std::make_shared<const TypeNode>(TypeNode{TypeVar{std::move(name)}});
}
Type action(Direction d, Priority obligation, Priority capability, Type payload,
            Type cont) {
  return std::make_shared<const TypeNode>(TypeNode{ActionType{
      d, std::move(obligation), std::move(capability), std::move(payload),
      std::move(cont)}});
}
Type in(Priority obligation, Priority capability, Type payload, Type cont) {
  return action(Direction::kIn, std::move(obligation), std::move(capability),
                std::move(payload), std::move(cont));
}
Type out(Priority obligation, Priority capability, Type payload, Type cont) {
  return action(Direction::kOut, std::move(obligation), std::move(capability),
                std::move(payload), std::move(cont));
}
Type rec(Index index, std::string var, Type body) {
  return std::make_shared<const TypeNode>(
      TypeNode{RecType{index, std::move(var), std::move(body)}});
}
Type base(std::string name) {
  return std::make_shared<const TypeNode>(TypeNode{BaseType{std::move(name)}});
}
}  // namespace ty

namespace proc {
namespace {
template <class N>
Proc make(N n, SourcePos pos) {
  return std::make_shared<const ProcNode>(ProcNode{std::move(n), pos});
}
}  // namespace

Proc idle(SourcePos pos) { return make(Idle{}, pos); }
Proc var(std::string name, SourcePos pos) { return make(ProcVar{std::move(name)}, pos); }
Proc input(Name subject, std::string binder, Proc body, SourcePos pos) {
  return make(Input{std::move(subject), std::move(binder), std::move(body)}, pos);
}
Proc output(Name subject, Value payload, Proc body, SourcePos pos) {
  return make(Output{std::move(subject), std::move(payload), std::move(body)}, pos);
}
Proc par(Proc left, Proc right, SourcePos pos) {
  return make(Parallel{std::move(left), std::move(right)}, pos);
}
Proc restrict(std::string channel, Type positive, Type negative, Proc body,
              SourcePos pos) {
  return make(Restriction{std::move(channel), std::move(positive),
                          std::move(negative), std::move(body)},
              pos);
}
Proc rec(Index index, std::string var, Proc body, SourcePos pos) {
  return make(Recursion{index, std::move(var), std::move(body)}, pos);
}
}  // namespace proc

namespace {
bool same_opt(const Type& a, const Type& b) {
  if (!a || !b) return !a && !b;
  return same(a, b);
}
}  // namespace

bool same(const Type& a, const Type& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, EndType>) {
          return true;
        } else if constexpr (std::is_same_v<T, TypeVar>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, ActionType>) {
          return x.direction == y.direction && x.obligation == y.obligation &&
                 x.capability == y.capability && same(x.payload, y.payload) &&
                 same(x.continuation, y.continuation);
        } else if constexpr (std::is_same_v<T, RecType>) {
          return x.index == y.index && x.var == y.var && same(x.body, y.body);
        } else {
          return x.name == y.name;
        }
      },
      a->node);
}

bool same(const Proc& a, const Proc& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Idle>) {
          return true;
        } else if constexpr (std::is_same_v<T, ProcVar>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Input>) {
          return x.subject == y.subject && x.binder == y.binder && same(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Output>) {
          return x.subject == y.subject && x.payload == y.payload && same(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Parallel>) {
          return same(x.left, y.left) && same(x.right, y.right);
        } else if constexpr (std::is_same_v<T, Restriction>) {
          return x.channel == y.channel && same_opt(x.positive, y.positive) &&
                 same_opt(x.negative, y.negative) && same(x.body, y.body);
        } else {
          return x.index == y.index && x.var == y.var && same(x.body, y.body);
        }
      },
      a->node);
}

}  // namespace sessprog
