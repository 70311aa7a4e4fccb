// Copyright 2026 The polyfair Authors.
//
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

#include "doctest.h"
#include "json.hpp"
#include "run_cli.hpp"

namespace {

nlohmann::json parsed(const cli::Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("fair-point on the golden table") {
  const cli::Result r = cli::run("--input " + cli::fixture("F3.json") + " fair-point");
  REQUIRE(r.exit_code == 0);
  const auto j = parsed(r);
  CHECK(j["blocks"].dump() == "[[3],[1,2]]");
  CHECK(j["levels"][0].get<double>() == doctest::Approx(0.5));
  CHECK(j["levels"][1].get<double>() == doctest::Approx(1.4));
  CHECK(j["log_base"] == "e");
  CHECK(j.contains("tol"));
}

TEST_CASE("validate exits 2 with a witness") {
  const cli::Result r = cli::run("--input " + cli::fixture("nonsub.json") + " validate");
  CHECK(r.exit_code == 2);
  const auto j = parsed(r);
  CHECK(j["witness"]["S"].dump() == "[1]");
  CHECK(j["witness"]["T"].dump() == "[2]");
  CHECK(cli::run("--input " + cli::fixture("F2.json") + " validate").exit_code == 0);
}

TEST_CASE("corner on the two-user table") {
  const cli::Result r = cli::run("--input " + cli::fixture("F2.json") + " corner --perm [1,2]");
  REQUIRE(r.exit_code == 0);
  CHECK(parsed(r)["rates"].dump() == "[1.0,1.5]");
}

TEST_CASE("malformed input exits 1 with a position") {
  const cli::Result r = cli::run("--input " + cli::fixture("malformed.json") + " validate");
  CHECK(r.exit_code == 1);
  CHECK(parsed(r)["message"].get<std::string>().find("byte") != std::string::npos);
  CHECK(cli::run("--input " + cli::fixture("F2.json") + " corner --perm [1,1]").exit_code == 1);
  CHECK(cli::run("no-such-command").exit_code == 1);
}

TEST_CASE("log base flag") {
  const cli::Result r =
      cli::run("--log-base 2 --input " + cli::fixture("mac_sym.json") + " fair-point");
  REQUIRE(r.exit_code == 0);
  const auto j = parsed(r);
  CHECK(j["log_base"] == "2");
  CHECK(j["sum_rate"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("every command emits JSON") {
  const std::string f3 = "--input " + cli::fixture("F3v.json") + " ";
  for (const char* cmd : {"corners-all", "maxmin-corner", "minmax-corner", "maxmin-value",
                          "decompose", "ratesplit", "timeshare --target 1.4,1.4,0.5",
                          "membership --point 1.4,1.4,0.5"}) {
    const cli::Result r = cli::run(f3 + cmd);
    CHECK_MESSAGE(r.exit_code == 0, cmd);
    CHECK_NOTHROW(parsed(r));
  }
  const cli::Result g = cli::run("gen tabular --n 4 --seed 9");
  REQUIRE(g.exit_code == 0);
  CHECK(parsed(g)["n"] == 4);
}

TEST_CASE("non-convergence exits 3") {
  // A target on the face sum but outside the region cannot be reached.
  const cli::Result r =
      cli::run("--input " + cli::fixture("F2.json") + " timeshare --target 2.5,0");
  CHECK(r.exit_code == 3);
}
