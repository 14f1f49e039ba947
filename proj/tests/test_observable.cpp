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

#include <random>

#include "jm/bloch.hpp"
#include "jm/observable.hpp"
#include "jm/scenarios.hpp"
#include "oracles.hpp"

using namespace jm;

namespace {

HermitianOperator op(const oracle::CMatrix& m) { return HermitianOperator(m); }

Observable sigma_z() { return Observable({"+", "-"}, {op(oracle::bloch(1, 0, 0, 1)), op(oracle::bloch(1, 0, 0, -1))}); }

HermitianOperator diag(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return HermitianOperator(m);
}

}  // namespace

TEST_SUITE("observables") {
  TEST_CASE("structure errors are distinct from tolerance failures") {
    CHECK_THROWS_AS(Observable({}, {}), StructureError);
    CHECK_THROWS_AS(Observable({"a", "b"}, {HermitianOperator::identity(2), HermitianOperator::zero(3)}), StructureError);
    CHECK_THROWS_AS(Observable({"a", "a"}, {HermitianOperator::identity(2), HermitianOperator::zero(2)}), StructureError);
    CHECK_THROWS_AS(Observable({"a"}, {}), StructureError);
  }

  TEST_CASE("validate examples") {
    CHECK(validate(sigma_z()).passed);
    CHECK(validate(trivial_observable(2, {0.5, 0.5})).passed);
    const Observable bad({"1", "0"}, {op(oracle::bloch(1, 0, 0, 1)), op(oracle::bloch(1, -1, 0, 0))});
    const auto r = validate(bad);
    CHECK_FALSE(r.passed);
    const double expected = oracle::op_norm(0.5 * (oracle::sz() - oracle::sx()));
    CHECK(expected == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(r.normalization_residual == doctest::Approx(expected).epsilon(1e-12));
    REQUIRE(r.effects.size() == 2);
    CHECK(r.effects[0].min_eigenvalue == doctest::Approx(0.0));
    CHECK(r.effects[0].max_eigenvalue == doctest::Approx(1.0));
  }

  TEST_CASE("is_sharp examples") {
    CHECK(is_sharp(sigma_z()));
    CHECK_FALSE(is_sharp(trivial_observable(2, {0.5, 0.5})));
    const auto e = oracle::bloch(1, 0.9, 0, 0);
    CHECK(oracle::op_norm(e * e - e) == doctest::Approx(0.0475));
    CHECK_FALSE(is_sharp(qubit_observable(Vec3(0.9, 0, 0))));
  }

  TEST_CASE("commute examples") {
    CHECK(commute(sigma_z(), sigma_z()));
    const auto a = oracle::bloch(1, 0, 0, 1), b = oracle::bloch(1, 1, 0, 0);
    const oracle::CMatrix c = a * b - b * a;
    CHECK(c.jacobiSvd().singularValues()(0) == doctest::Approx(0.5));
    CHECK_FALSE(commute(sigma_z(), qubit_observable(Vec3(1, 0, 0))));
    CHECK(commute(qubit_observable(Vec3(0.3, 0.2, 0.5)), trivial_observable(2, {0.5, 0.5})));
  }

  TEST_CASE("product observable layout and joint labels") {
    const ProductObservable g({{"1", "0"}, {"1", "0"}},
                              {HermitianOperator::scalar(2, 0.25), HermitianOperator::scalar(2, 0.25),
                               HermitianOperator::scalar(2, 0.25), HermitianOperator::scalar(2, 0.25)});
    CHECK(g.observable().outcomes() == LabelList{"11", "10", "01", "00"});
    const ProductObservable h({{"up", "dn"}, {"x", "y"}}, std::vector<HermitianOperator>(4, HermitianOperator::scalar(2, 0.25)));
    CHECK(h.observable().outcomes() == LabelList{"up|x", "up|y", "dn|x", "dn|y"});
    CHECK(h.flat_index(std::vector<std::size_t>{1, 0}) == 2);
    CHECK(h.multi_index(3) == std::vector<std::size_t>{1, 1});
    CHECK_THROWS_AS(ProductObservable({{"1", "0"}, {"1", "0"}}, std::vector<HermitianOperator>(3, HermitianOperator::zero(2))),
                    StructureError);
  }

  TEST_CASE("marginal examples") {
    const auto prod = product_joint_commuting(sigma_z(), sigma_z());
    const auto m0 = marginal(prod.joint, 0);
    for (std::size_t i = 0; i < 2; ++i) CHECK(operator_norm(m0.effect(i) - sigma_z().effect(i)) <= 1e-12);

    const Vec3 a(1 / std::sqrt(2.0), 0, 0), b(0, 1 / std::sqrt(2.0), 0);
    const auto g = boundary_joint(a, b);
    const auto ma = marginal(g, 0);
    const auto ea = qubit_observable(a);
    for (std::size_t i = 0; i < 2; ++i) CHECK(operator_norm(ma.effect(i) - ea.effect(i)) <= 1e-12);

    const ProductObservable uniform({{"1", "0"}, {"1", "0"}}, std::vector<HermitianOperator>(4, HermitianOperator::scalar(2, 0.25)));
    const auto m1 = marginal(uniform, 1);
    for (std::size_t i = 0; i < 2; ++i) CHECK(operator_norm(m1.effect(i) - HermitianOperator::scalar(2, 0.5)) <= 1e-15);
    CHECK_THROWS_AS(marginal(uniform, 2), StructureError);
  }

  TEST_CASE("product_joint_commuting examples") {
    const auto zz = product_joint_commuting(sigma_z(), sigma_z());
    CHECK(zz.uniqueness_guaranteed);
    CHECK(operator_norm(zz.joint.cell(0, 0) - sigma_z().effect(0)) <= 1e-15);
    CHECK(operator_norm(zz.joint.cell(0, 1)) <= 1e-15);
    CHECK(operator_norm(zz.joint.cell(1, 0)) <= 1e-15);
    CHECK(operator_norm(zz.joint.cell(1, 1) - sigma_z().effect(1)) <= 1e-15);

    const auto zt = product_joint_commuting(sigma_z(), trivial_observable(2, {0.5, 0.5}));
    CHECK(operator_norm(zt.joint.cell(0, 0) - op(0.25 * (oracle::id2() + oracle::sz()))) <= 1e-15);
    CHECK(operator_norm(zt.joint.cell(1, 1) - op(0.25 * (oracle::id2() - oracle::sz()))) <= 1e-15);

    const Observable b({"0", "1"}, {diag(0.7, 0.2), diag(0.3, 0.8)});
    const auto zb = product_joint_commuting(sigma_z(), b);
    CHECK(operator_norm(zb.joint.cell(0, 0) - diag(0.7, 0)) <= 1e-15);
    CHECK(operator_norm(zb.joint.cell(0, 1) - diag(0.3, 0)) <= 1e-15);
    CHECK(operator_norm(zb.joint.cell(1, 0) - diag(0, 0.2)) <= 1e-15);
    CHECK(operator_norm(zb.joint.cell(1, 1) - diag(0, 0.8)) <= 1e-15);

    const auto unsharp = product_joint_commuting(b, b);
    CHECK_FALSE(unsharp.uniqueness_guaranteed);
    CHECK_THROWS_AS(product_joint_commuting(sigma_z(), qubit_observable(Vec3(1, 0, 0))), PreconditionError);
  }

  TEST_CASE("joint_agreement examples") {
    const Vec3 a(0.6, 0, 0), bhat(0, 1, 0);
    const auto g1 = gamma_family_member(a, 0.4, bhat, 0.1);
    const auto g3 = gamma_family_member(a, 0.4, bhat, 0.3);
    CHECK(joint_agreement(g1, g1));
    CHECK_FALSE(joint_agreement(g1, g3));

    std::vector<HermitianOperator> cells;
    for (std::size_t z = 0; z < 4; ++z) cells.push_back(g1.cell_at(z));
    // Same cells under permuted parent outcome order.
    const ProductObservable permuted({{"0", "1"}, {"0", "1"}},
                                     {cells[3], cells[2], cells[1], cells[0]});
    CHECK(joint_agreement(g1, permuted));
  }

  TEST_CASE("property: marginals of valid product observables pass validate") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 30; ++rep) {
      const int dim = 2 + rep % 6;
      auto [a, b] = scenarios::random_commuting_sharp_pair(dim, rng);
      const auto prod = product_joint_commuting(a, b);
      CHECK(validate(prod.joint.observable(), 1e-10).passed);
      for (std::size_t axis = 0; axis < 2; ++axis) CHECK(validate(marginal(prod.joint, axis), 1e-10).passed);
      const Observable parents[2] = {a, b};
      CHECK(marginal_residual(prod.joint, parents) <= 1e-12);
      for (std::size_t z = 0; z < prod.joint.size(); ++z) CHECK(oracle::psd(prod.joint.cell_at(z).matrix(), 1e-12));
    }
  }

  TEST_CASE("property: subset sums of a sharp observable are projections") {
    std::mt19937_64 rng(4);
    const Matrix u = random_unitary(4, rng);
    std::vector<HermitianOperator> effects;
    for (int k = 0; k < 4; ++k) effects.emplace_back(Matrix(u.col(k) * u.col(k).adjoint()));
    const Observable a({"a", "b", "c", "d"}, effects);
    REQUIRE(is_sharp(a));
    for (unsigned bits = 0; bits < 16; ++bits) {
      std::vector<bool> mask(4);
      for (int k = 0; k < 4; ++k) mask[k] = (bits >> k) & 1U;
      const auto p = a.sum(mask);
      CHECK(spectral_norm(p.matrix() * p.matrix() - p.matrix()) <= 1e-12);
    }
  }
}
