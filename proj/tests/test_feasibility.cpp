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

#include <cstring>
#include <random>

#include "jm/feasibility.hpp"
#include "oracles.hpp"

using namespace jm;

namespace {

const Vec3 kX = Vec3::UnitX(), kY = Vec3::UnitY(), kZ = Vec3::UnitZ();

Vec3 random_vector(std::mt19937_64& rng, double max_len) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(0, max_len);
  Vec3 v(n(rng), n(rng), n(rng));
  return u(rng) * v.normalized();
}

void check_witness(const FeasibilityReport& r, std::span<const Observable> parents, double tol) {
  REQUIRE(r.witness.has_value());
  CHECK(validate(r.witness->observable(), tol).passed);
  CHECK(marginal_residual(*r.witness, parents) <= 10 * tol);
  for (std::size_t z = 0; z < r.witness->size(); ++z) CHECK(oracle::min_eig(r.witness->cell_at(z).matrix()) >= -tol);
}

Matrix diag3(double a, double b, double c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_SUITE("feasibility") {
  TEST_CASE("commuting sharp sigma_z pair is feasible with product witness") {
    const auto z = qubit_observable(kZ);
    const auto r = decide(z, z);
    CHECK(r.verdict == Verdict::Feasible);
    CHECK(r.reason == Reason::CommutingSharp);
    CHECK(r.route == "product");
    const Observable parents[2] = {z, z};
    check_witness(r, parents, 1e-12);
  }

  TEST_CASE("three orthogonal l = 0.6 observables are infeasible via the triple criterion") {
    const Observable obs[3] = {qubit_observable(0.6 * kX), qubit_observable(0.6 * kY), qubit_observable(0.6 * kZ)};
    const auto r = decide(obs);
    CHECK(r.verdict == Verdict::Infeasible);
    CHECK(r.reason == Reason::Eq6);
    CHECK(r.margin == doctest::Approx(0.08).epsilon(1e-9));
    CHECK(std::strcmp(to_string(r.reason), "eq6") == 0);
  }

  TEST_CASE("orthogonal l = 0.5 pair is feasible with a numerical witness") {
    const auto a = qubit_observable(0.5 * kX), b = qubit_observable(0.5 * kY);
    const auto r = decide(a, b);
    CHECK(r.verdict == Verdict::Feasible);
    CHECK(r.reason == Reason::Eq3);
    CHECK(r.margin == doctest::Approx(std::sqrt(2.0) - 2.0));
    const Observable parents[2] = {a, b};
    check_witness(r, parents, 1e-7);
    CHECK(marginal_residual(*r.witness, parents) <= 1e-9);
  }

  TEST_CASE("qubit pair solver on the Busch boundary recovers the unique joint") {
    const double l = 1 / std::sqrt(2.0);
    const auto a = qubit_observable(l * kX), b = qubit_observable(l * kY);
    const auto r = decide_pair_qubit_numeric(a, b);
    REQUIRE(r.verdict == Verdict::Feasible);
    const auto g = boundary_joint(l * kX, l * kY);
    double diff = 0;
    for (std::size_t z = 0; z < 4; ++z) diff = std::max(diff, operator_norm(g.cell_at(z) - r.witness->cell_at(z)));
    CHECK(diff <= 1e-6);
  }

  TEST_CASE("l = 0.72 pair: numeric path undetermined, decide infeasible via Busch") {
    const auto a = qubit_observable(0.72 * kX), b = qubit_observable(0.72 * kY);
    const auto numeric = decide_pair_qubit_numeric(a, b);
    CHECK(numeric.verdict == Verdict::Undetermined);
    CHECK_FALSE(numeric.witness.has_value());
    CHECK(numeric.residual > 0);
    const auto r = decide(a, b);
    CHECK(r.verdict == Verdict::Infeasible);
    CHECK(r.reason == Reason::Eq3);
    CHECK(r.margin + 2.0 == doctest::Approx(1.44 * std::sqrt(2.0)));
  }

  TEST_CASE("trivial coin is compatible with anything") {
    const auto coin = qubit_observable(Vec3::Zero());
    const auto b = qubit_observable(kX);
    const auto numeric = decide_pair_qubit_numeric(coin, b);
    CHECK(numeric.verdict == Verdict::Feasible);
    CHECK(decide(coin, b).verdict == Verdict::Feasible);
  }

  TEST_CASE("trivial joint when A(1) + B(1) <= I") {
    const auto quarter = trivial_observable(2, {0.25, 0.75}, {"1", "0"});
    const auto g = trivial_joint_if_sum_leq_identity(quarter, quarter);
    REQUIRE(g.has_value());
    CHECK(operator_norm(g->cell(1, 1) - HermitianOperator::scalar(2, 0.5)) <= 1e-15);
    CHECK(operator_norm(g->cell(0, 0)) == 0.0);
    const Observable parents[2] = {quarter, quarter};
    CHECK(marginal_residual(*g, parents) <= 1e-15);

    const Vec3 a = kX / std::sqrt(2.0), b = kY / std::sqrt(2.0);
    const auto joint = boundary_joint(a, b);
    for (std::size_t z = 0; z < 4; ++z) CHECK(oracle::max_eig(joint.cell_at(z).matrix()) <= 0.5 + 1e-12);
    for (std::size_t z = 0; z < 4; ++z) {
      for (std::size_t w = 0; w < 4; ++w) {
        const auto ez = Observable({"1", "0"}, {joint.cell_at(z), HermitianOperator::identity(2) - joint.cell_at(z)});
        const auto ew = Observable({"1", "0"}, {joint.cell_at(w), HermitianOperator::identity(2) - joint.cell_at(w)});
        const auto t = trivial_joint_if_sum_leq_identity(ez, ew);
        REQUIRE(t.has_value());
        CHECK(validate(t->observable(), 1e-12).passed);
      }
    }

    const auto big = qubit_observable(0.75, 0.75 * kZ);
    const oracle::CMatrix sum = 2 * big.effect(0).matrix();
    CHECK(oracle::max_eig(sum) == doctest::Approx(1.5));
    CHECK_FALSE(trivial_joint_if_sum_leq_identity(big, big).has_value());
  }

  TEST_CASE("pairwise versus global") {
    const Observable obs[3] = {qubit_observable(0.6 * kX), qubit_observable(0.6 * kY), qubit_observable(0.6 * kZ)};
    const auto r = pairwise_vs_global(obs);
    CHECK(r.all_pairs_feasible);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) CHECK(r.pairwise[i][j]->verdict == Verdict::Feasible);
    CHECK(r.global.verdict == Verdict::Infeasible);
    CHECK(r.global.reason == Reason::Eq6);

    const Observable p({"a", "b", "c"}, {HermitianOperator(diag3(1, 0, 0)), HermitianOperator(diag3(0, 1, 0)),
                                         HermitianOperator(diag3(0, 0, 1))});
    const Observable q({"x", "y"}, {HermitianOperator(diag3(1, 1, 0)), HermitianOperator(diag3(0, 0, 1))});
    const Observable sharp3[3] = {p, q, q};
    const auto all = pairwise_vs_global(sharp3);
    CHECK(all.all_pairs_feasible);
    CHECK(all.global.verdict == Verdict::Feasible);

    const Observable u({"u", "v"}, {HermitianOperator(diag3(0.3, 0.6, 0.9)), HermitianOperator(diag3(0.7, 0.4, 0.1))});
    const Observable mixed[3] = {p, q, u};
    const auto m = pairwise_vs_global(mixed);
    CHECK(m.all_pairs_feasible);
    REQUIRE(m.global.verdict == Verdict::Feasible);
    check_witness(m.global, mixed, 1e-7);
  }

  TEST_CASE("structure errors") {
    const auto a = qubit_observable(kX);
    const auto b = trivial_observable(3, {0.5, 0.5});
    CHECK_THROWS_AS(decide(a, b), StructureError);
    const Observable one[1] = {a};
    CHECK_THROWS_AS(decide(one), StructureError);
  }

  TEST_CASE("generic numerical search finds witnesses for non-qubit problems") {
    // Marginals of a random full-rank 3 x 2 joint POVM are jointly measurable by construction.
    std::mt19937_64 rng(17);
    std::vector<Matrix> m;
    Matrix sum = Matrix::Zero(3, 3);
    for (int k = 0; k < 6; ++k) {
      const Matrix h = random_hermitian(3, rng).matrix();
      m.push_back(h * h.adjoint() + 0.05 * Matrix::Identity(3, 3));
      sum += m.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
    const Matrix s = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                     es.eigenvectors().adjoint();
    std::vector<HermitianOperator> cells;
    for (const auto& mk : m) cells.emplace_back(Matrix(s * mk * s));
    const ProductObservable joint({{"0", "1", "2"}, {"p", "q"}}, cells);
    const Observable a = marginal(joint, 0), b = marginal(joint, 1);
    REQUIRE(validate(a).passed);
    REQUIRE(validate(b).passed);
    const Observable parents[2] = {a, b};
    const auto r = decide(parents);
    REQUIRE(r.verdict == Verdict::Feasible);
    CHECK(r.reason == Reason::None);
    check_witness(r, parents, 1e-7);
  }

  TEST_CASE("property: feasible witnesses satisfy validate and marginals") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 30; ++rep) {
      const auto a = qubit_observable(random_vector(rng, 0.65));
      const auto b = qubit_observable(random_vector(rng, 0.65));
      const auto r = decide(a, b);
      REQUIRE(r.verdict == Verdict::Feasible);
      const Observable parents[2] = {a, b};
      check_witness(r, parents, 1e-7);
    }
  }

  TEST_CASE("property: determinism for a fixed seed") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 5; ++rep) {
      const auto a = qubit_observable(random_vector(rng, 1.0));
      const auto b = qubit_observable(random_vector(rng, 1.0));
      const Observable parents[2] = {a, b};
      FeasibilityOptions o;
      o.seed = 100 + rep;
      o.max_iter = 2000;
      const auto r1 = decide_numeric(parents, o), r2 = decide_numeric(parents, o);
      CHECK(r1.verdict == r2.verdict);
      CHECK(std::memcmp(&r1.residual, &r2.residual, sizeof(double)) == 0);
      CHECK(r1.iterations == r2.iterations);
      const auto q1 = decide_pair_qubit_numeric(a, b, o), q2 = decide_pair_qubit_numeric(a, b, o);
      CHECK(q1.verdict == q2.verdict);
      CHECK(std::memcmp(&q1.residual, &q2.residual, sizeof(double)) == 0);
    }
  }

  TEST_CASE("property: trivialization never breaks an analytic FEASIBLE verdict") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    int checked = 0;
    for (int rep = 0; rep < 40; ++rep) {
      const auto a = qubit_observable(random_vector(rng, 1.0));
      const auto b = qubit_observable(random_vector(rng, 1.0));
      const auto r = decide(a, b);
      if (r.verdict != Verdict::Feasible || r.reason == Reason::None) continue;
      ++checked;
      const double p = u(rng);
      const auto trivial = trivial_observable(2, {p, 1 - p}, {"1", "0"});
      CHECK(decide(trivial, b).verdict == Verdict::Feasible);
      CHECK(decide(a, trivial).verdict == Verdict::Feasible);
    }
    CHECK(checked > 5);
  }

  TEST_CASE("property: qubit pair solver agrees with the Busch criterion outside the band") {
    std::mt19937_64 rng(61);
    int compared = 0, agreed = 0;
    for (int rep = 0; rep < 200; ++rep) {
      const Vec3 a = random_vector(rng, 1.0), b = random_vector(rng, 1.0);
      const double value = (a + b).norm() + (a - b).norm();
      if (std::abs(value - 2.0) < 1e-3) continue;
      const auto r = decide_pair_qubit_numeric(qubit_observable(a), qubit_observable(b));
      ++compared;
      const bool feasible = r.verdict == Verdict::Feasible;
      if (feasible == (value <= 2.0)) ++agreed;
      CHECK_MESSAGE(feasible == (value <= 2.0), "value = ", value);
    }
    CHECK(compared == agreed);
    CHECK(compared > 150);
  }
}
