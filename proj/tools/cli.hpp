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

#ifndef SESSPROG_TOOLS_CLI_HPP_
#define SESSPROG_TOOLS_CLI_HPP_

#include <ostream>

namespace sessprog::cli {

// Exit statuses.
inline constexpr int kOk = 0;          // accept / verified / holds
inline constexpr int kNegative = 1;    // reject / violated / unknown
inline constexpr int kParseError = 2;  // also bad usage and unreadable files
inline constexpr int kLimit = 3;       // truncation or budget exhaustion

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sessprog::cli

#endif  // SESSPROG_TOOLS_CLI_HPP_
