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

// Concrete syntax.
//
//   Program ::= { "type" Id "=" Type [";"] } Proc
//   Proc    ::= Prefix [ "|" Proc ]
//   Prefix  ::= "0" | PV | "(" Proc ")"
//             | Name "?" "(" id ")" "." Prefix
//             | Name "!" Val "." Prefix
//             | "new" id [ ":" Type [ "~" Type ] ] ["."] Prefix
//             | "rec" "[" Idx "]" PV "." Prefix
//   Val     ::= Name | integer            Name ::= id ("+" | "-") | id
//   Type    ::= "end" | "int" | tv | "(" Type ")"
//             | ("?" | "!") "[" Pri "," Pri "]" Type "." Type
//             | "rec" "[" Idx "]" tv "." Type
//   Pri     ::= natural | id              Idx ::= natural | "inf"
//
// Process variables start with an uppercase letter; channels, variables,
// type variables and priority variables with anything else. "//" starts
// a line comment. A restriction annotated with a single type gets its
// syntactic dual for the negative endpoint; an unannotated one carries no
// types. Type aliases are expanded in place.

#ifndef SESSPROG_PARSER_HPP_
#define SESSPROG_PARSER_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sessprog/ast.hpp"

namespace sessprog {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, std::string found);
  ParseError(int line, int column, std::string message);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

Program parse_program(std::string_view text);
Proc parse_process(std::string_view text);
Type parse_type(std::string_view text);

}  // namespace sessprog

#endif  // SESSPROG_PARSER_HPP_
