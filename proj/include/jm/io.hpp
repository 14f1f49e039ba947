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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jm/feasibility.hpp"
#include "jm/observable.hpp"
#include "jm/order.hpp"
#include "jm/partitioning.hpp"

namespace jm::io {

using Json = nlohmann::ordered_json;

// Operators: {"dim": d, "re": [[...]], "im": [[...]]} ("im" optional), or a
// qubit effect in Bloch form {"alpha": x, "a": [x, y, z]}.
Json to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const Json& j);

// Observables: {"outcomes": [...], "effects": {label: operator}}. "effects"
// may also be an array aligned with "outcomes".
Json to_json(const Observable& a);
Observable observable_from_json(const Json& j);

// Product observables add "parents": [[labels], ...]; effects are keyed by
// joint label and listed row-major.
Json to_json(const ProductObservable& g);
ProductObservable product_from_json(const Json& j);
bool is_product_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const FeasibilityReport& r, bool include_witness = true);
Json to_json(const PairwiseGlobalReport& r);
Json to_json(const OrderAudit& audit);
Json to_json(const CompatibilityMatrix& m);
Json to_json(const ParadoxReport& r);

/// Rounds every floating-point value to 12 significant digits; NaN and
/// infinities become null.
Json round_numbers(const Json& j, int digits = 12);

Json load_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

}  // namespace jm::io
