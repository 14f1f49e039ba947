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

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "jm/feasibility.hpp"
#include "jm/io.hpp"

namespace jm::scenarios {

struct Expectation {
  std::string name;
  std::string citation;
  io::Json expected;
  io::Json observed;
  bool passed = false;
};

struct ScenarioResult {
  std::string name;
  std::string citation;
  std::map<std::string, double> parameters;
  std::vector<Expectation> expectations;
  io::Json details = io::Json::object();
  bool passed() const;
};

struct ScenarioInfo {
  std::string name;
  std::string citation;
  std::string summary;
  std::map<std::string, double> defaults;
};

const std::vector<ScenarioInfo>& registry();

/// Runs a registered scenario. Unknown names throw StructureError; unknown
/// override keys throw ParseError.
ScenarioResult run(const std::string& name, const std::map<std::string, double>& overrides = {},
                   const FeasibilityOptions& opts = {});

io::Json to_json(const ScenarioResult& r);

/// Two sharp observables diagonal in a common Haar-random basis. Each has
/// between 2 and min(3, dim) nonzero projections.
std::pair<Observable, Observable> random_commuting_sharp_pair(int dim, std::mt19937_64& rng);

}  // namespace jm::scenarios
