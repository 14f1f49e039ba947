// Copyright 2026 The jm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <set>

#include "jm/scenarios.hpp"

using namespace jm;

TEST_SUITE("scenarios") {
  TEST_CASE("registry lists every scenario with a citation") {
    std::set<std::string> names;
    for (const auto& s : scenarios::registry()) {
      names.insert(s.name);
      CHECK_FALSE(s.citation.empty());
      CHECK_FALSE(s.summary.empty());
    }
    CHECK(names == std::set<std::string>{"busch-boundary", "pairwise-not-triple", "unique-not-greatest",
                                         "no-maximal-family", "partition-paradox", "commuting-sharp-product"});
  }

  TEST_CASE("fast scenarios pass at defaults") {
    for (const char* name : {"busch-boundary", "pairwise-not-triple", "unique-not-greatest", "no-maximal-family",
                             "partition-paradox"}) {
      const auto r = scenarios::run(name);
      CHECK_MESSAGE(r.passed(), name);
      CHECK_FALSE(r.expectations.empty());
    }
  }

  TEST_CASE("expectation sets flip with the parameter") {
    const auto r = scenarios::run("pairwise-not-triple", {{"l", 0.5}});
    CHECK(r.passed());
    const auto j = scenarios::to_json(r);
    bool found = false;
    for (const auto& e : j["expectations"]) {
      if (e["name"] == "global verdict") {
        CHECK(e["expected"] == "FEASIBLE");
        found = true;
      }
    }
    CHECK(found);
  }

  TEST_CASE("reduced commuting-sharp run") {
    const auto r = scenarios::run("commuting-sharp-product", {{"pairs", 5}, {"trials", 100}});
    CHECK(r.passed());
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(scenarios::run("nope"), StructureError);
    CHECK_THROWS_AS(scenarios::run("busch-boundary", {{"unknown", 1}}), ParseError);
  }

  TEST_CASE("verdict fields are reproducible") {
    const auto a = scenarios::to_json(scenarios::run("partition-paradox"));
    const auto b = scenarios::to_json(scenarios::run("partition-paradox"));
    CHECK(a["expectations"].dump() == b["expectations"].dump());
  }
}
