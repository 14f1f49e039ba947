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

#include <filesystem>
#include <random>

#include "jm/io.hpp"
#include "jm/scenarios.hpp"

using namespace jm;
using jm::io::Json;

namespace {

const std::string kData = JM_TEST_DATA;

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("operator round trip") {
    std::mt19937_64 rng(1);
    for (int dim : {1, 2, 5}) {
      const auto h = random_hermitian(dim, rng);
      const auto back = io::operator_from_json(Json::parse(io::to_json(h).dump()));
      CHECK((back.matrix() - h.matrix()).norm() == 0.0);
    }
  }

  TEST_CASE("Bloch operator form") {
    const auto h = io::operator_from_json(Json::parse(R"({"alpha": 1, "a": [0, 0, 1]})"));
    CHECK((h.matrix() - pauli_z().matrix() * 0.5 - Matrix::Identity(2, 2) * 0.5).norm() == 0.0);
  }

  TEST_CASE("observable and product round trip") {
    std::mt19937_64 rng(2);
    auto [a, b] = scenarios::random_commuting_sharp_pair(4, rng);
    const auto back = io::observable_from_json(io::to_json(a));
    CHECK(back.outcomes() == a.outcomes());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK((back.effect(k).matrix() - a.effect(k).matrix()).norm() == 0.0);
    const auto g = product_joint_commuting(a, b).joint;
    const Json gj = io::to_json(g);
    CHECK(io::is_product_json(gj));
    CHECK_FALSE(io::is_product_json(io::to_json(a)));
    const auto gb = io::product_from_json(gj);
    CHECK(gb.observable().outcomes() == g.observable().outcomes());
    for (std::size_t z = 0; z < g.size(); ++z) CHECK((gb.cell_at(z).matrix() - g.cell_at(z).matrix()).norm() == 0.0);
  }

  TEST_CASE("files in the test data directory parse") {
    CHECK(io::observable_from_json(io::load_file(kData + "/sz.json")).size() == 2);
    CHECK(io::observable_from_json(io::load_file(kData + "/sx.json")).dim() == 2);
    CHECK(io::product_from_json(io::load_file(kData + "/paradox_g.json")).size() == 4);
    CHECK_FALSE(validate(io::observable_from_json(io::load_file(kData + "/bad_normalization.json"))).passed);
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(io::load_file(kData + "/malformed.json"), ParseError);
    CHECK_THROWS_AS(io::load_file(kData + "/no_such_file.json"), ParseError);
    CHECK_THROWS_AS(io::operator_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0]]})")), StructureError);
    CHECK_THROWS_AS(io::operator_from_json(Json::parse(R"({"alpha": 1, "a": [0, 1]})")), StructureError);
    CHECK_THROWS_AS(io::observable_from_json(Json::parse(R"({"outcomes": ["1"], "effects": {"0": {"alpha": 2, "a": [0,0,0]}}})")),
                    StructureError);
    CHECK_THROWS_AS(io::product_from_json(Json::parse(R"({"outcomes": ["1"]})")), StructureError);
  }

  TEST_CASE("numbers are rounded to 12 significant digits") {
    const Json j = {{"x", 0.1 + 0.2}, {"nested", {{"y", 1.0 / 3.0}}}, {"n", 7}, {"bad", std::nan("")}};
    const Json r = io::round_numbers(j);
    CHECK(r["x"].get<double>() == 0.3);
    CHECK(r["nested"]["y"].get<double>() == 0.333333333333);
    CHECK(r["n"].get<int>() == 7);
    CHECK(r["bad"].is_null());
  }

  TEST_CASE("report json shapes") {
    const auto a = io::observable_from_json(io::load_file(kData + "/sz.json"));
    const auto r = decide(a, a);
    const Json j = io::to_json(r);
    CHECK(j["verdict"] == "FEASIBLE");
    CHECK(j["reason"] == "commuting-sharp");
    CHECK(j.contains("residual"));
    CHECK(j.contains("iterations"));
    CHECK(j.contains("margin"));
    CHECK(j["witness"].is_object());
    CHECK(io::to_json(r, false)["witness"].is_null());
  }

  TEST_CASE("write and reload") {
    const auto path = std::filesystem::temp_directory_path() / "jm_io_test.json";
    const Json j = {{"k", 1.5}};
    io::write_file(path, j);
    CHECK(io::load_file(path) == j);
    std::filesystem::remove(path);
  }
}
