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

#ifndef SESSPROG_PRETTY_HPP_
#define SESSPROG_PRETTY_HPP_

#include <string>

#include "sessprog/ast.hpp"

namespace sessprog {

// Output is accepted by the parser and parses back to the same tree.
std::string pretty(const Proc& p);
std::string pretty(const Type& t);

std::string to_string(const Name& n);
std::string to_string(const Value& v);
std::string to_string(const Index& i);
std::string to_string(const Priority& p);

}  // namespace sessprog

#endif  // SESSPROG_PRETTY_HPP_
