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

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "sessprog");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = sessprog::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string example(const char* name) {
  return std::string(SESSPROG_EXAMPLES_DIR) + "/" + name + ".ssp";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check") {
  auto fw = run({"check", example("forwarder")});
  CHECK(fw.code == sessprog::cli::kOk);
  CHECK(fw.out.find("alpha = 1") != std::string::npos);
  CHECK(fw.out.find("delta = 0") != std::string::npos);

  auto mutual = run({"check", example("mutual")});
  CHECK(mutual.code == sessprog::cli::kNegative);
  CHECK(mutual.out.find("beta < delta, delta < beta") != std::string::npos);
  CHECK(!mutual.err.empty());

  auto self = run({"check", example("self"), "--json"});
  CHECK(self.code == sessprog::cli::kNegative);
  auto j = nlohmann::json::parse(self.out);
  CHECK(j["accepted"] == false);
  REQUIRE(j["diagnostics"].size() == 1);
  CHECK(j["diagnostics"][0]["witness"].size() == 1);
  CHECK(j["diagnostics"][0]["witness"][0]["lhs"] == "beta");

  // rec[inf] bindings exceed judgment index 0.
  auto zero = run({"check", example("forwarder"), "--judgment-index", "0"});
  CHECK(zero.code == sessprog::cli::kNegative);
  CHECK(zero.err.find("RecShapeMismatch") != std::string::npos);
  CHECK(run({"check", example("forwarder"), "--judgment-index", "x"}).code ==
        sessprog::cli::kParseError);
}

TEST_CASE("oracle and progress") {
  auto self = run({"oracle", example("self"), "--approx", "1"});
  CHECK(self.code == sessprog::cli::kNegative);
  CHECK(self.out.find("violated-dynamic") != std::string::npos);
  CHECK(self.out.find("stuck input on a+") != std::string::npos);

  auto orphan = run({"oracle", example("orphan"), "--json"});
  CHECK(orphan.code == sessprog::cli::kNegative);
  auto j = nlohmann::json::parse(orphan.out);
  CHECK(j["status"] == "violated-dynamic");
  CHECK(j["evidence"]["prefix"] == "output");
  CHECK(j["truncated"] == false);

  CHECK(run({"oracle", example("forwarder")}).code == sessprog::cli::kOk);
  CHECK(run({"oracle", example("forwarder"), "--max-states", "3"}).code ==
        sessprog::cli::kLimit);
  CHECK(run({"progress", example("forwarder")}).code == sessprog::cli::kOk);
  auto unknown = run({"progress", example("mutual"), "--json"});
  CHECK(unknown.code == sessprog::cli::kNegative);
  CHECK(nlohmann::json::parse(unknown.out)["status"] == "unknown");
}

TEST_CASE("run, explore, measure, approx") {
  auto r1 = run({"run", example("forwarder"), "--seed", "7", "--max-steps", "20", "--json"});
  auto r2 = run({"run", example("forwarder"), "--seed", "7", "--max-steps", "20", "--json"});
  CHECK(r1.code == sessprog::cli::kLimit);
  CHECK(r1.out == r2.out);
  CHECK(nlohmann::json::parse(r1.out)["steps"].size() == 20);

  auto fin = run({"run", example("self")});
  CHECK(fin.code == sessprog::cli::kOk);
  CHECK(fin.out.find("normal form") != std::string::npos);

  auto ex = run({"explore", example("forwarder"), "--json"});
  CHECK(ex.code == sessprog::cli::kOk);
  CHECK(nlohmann::json::parse(ex.out)["states"].get<int>() > 1);

  auto m = run({"measure", example("forwarder"), "--approx", "1", "--json"});
  CHECK(m.code == sessprog::cli::kOk);
  auto mj = nlohmann::json::parse(m.out);
  CHECK(mj["binders"].size() == 3);

  auto a = run({"approx", "0", example("forwarder")});
  CHECK(a.code == sessprog::cli::kOk);
  CHECK(a.out.find("rec[0] X.") != std::string::npos);
  CHECK(a.out.find("inf") == std::string::npos);
}

TEST_CASE("dual") {
  CHECK(run({"dual", "rec[inf] t. ?[a,b] int . t",
             "![b,a] int . rec[inf] t. ![b,a] int . t"}).code == sessprog::cli::kOk);
  auto j = nlohmann::json::parse(
      run({"dual", "rec[inf] t. ?[a,b] int . t", "![b,a] int . rec[inf] t. ![b,a] int . t",
           "--json"}).out);
  CHECK(j["strict"] == false);
  CHECK(j["full"] == true);
  CHECK(run({"dual", "?[a,b] int . end", "![a,b] int . end"}).code == sessprog::cli::kNegative);
  CHECK(run({"dual", "?[a,b", "end"}).code == sessprog::cli::kParseError);
}

TEST_CASE("errors") {
  CHECK(run({}).code == sessprog::cli::kParseError);
  CHECK(run({"check"}).code == sessprog::cli::kParseError);
  CHECK(run({"check", "/nonexistent.ssp"}).code == sessprog::cli::kParseError);
  CHECK(run({"frobnicate"}).code == sessprog::cli::kParseError);
  CHECK(run({"--help"}).code == sessprog::cli::kOk);
}

}  // TEST_SUITE
