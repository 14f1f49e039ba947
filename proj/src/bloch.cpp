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

#include "jm/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace jm {

namespace {

double normalized_dot(const Vec3& u, const Vec3& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return u.dot(v) / (nu * nv);
}

bool orthogonal(const Vec3& u, const Vec3& v) { return std::abs(normalized_dot(u, v)) <= kDirectionTol; }

bool parallel(const Vec3& u, const Vec3& v) {
  if (u.norm() == 0.0 || v.norm() == 0.0) return true;
  return std::abs(normalized_dot(u, v)) >= 1.0 - kDirectionTol;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require_unit_alpha_effect(const Vec3& v, const char* what) {
  if (!is_valid_effect_params(1.0, v, kCriterionTol)) {
    throw PreconditionError(std::string(what) + ": (1, v) is not an effect, ||v|| = " + fmt(v.norm()));
  }
}

}  // namespace

HermitianOperator effect_from_bloch(double alpha, const Vec3& a) {
  Matrix m(2, 2);
  m << Complex(alpha + a.z(), 0), Complex(a.x(), -a.y()), Complex(a.x(), a.y()), Complex(alpha - a.z(), 0);
  return HermitianOperator(Matrix(0.5 * m));
}

HermitianOperator BlochEffect::op() const { return effect_from_bloch(alpha, a); }

BlochEffect BlochEffect::from_operator(const HermitianOperator& e) {
  if (e.dim() != 2) throw StructureError("Bloch parameters need a qubit operator");
  const Matrix& m = e.matrix();
  BlochEffect out;
  out.alpha = m.trace().real();
  out.a = Vec3((m * pauli_x().matrix()).trace().real(), (m * pauli_y().matrix()).trace().real(),
               (m * pauli_z().matrix()).trace().real());
  return out;
}

Observable SimpleQubitObservable::observable() const {
  return Observable({"1", "0"}, {effect_one(), effect_zero()});
}

Observable qubit_observable(double alpha, const Vec3& a) { return SimpleQubitObservable{{alpha, a}}.observable(); }

bool is_valid_effect_params(double alpha, const Vec3& a, double tol) {
  const double n = a.norm();
  return n <= alpha + tol && alpha <= 2.0 - n + tol;
}

bool is_nontrivial_projection_params(double alpha, const Vec3& a, double tol) {
  return std::abs(alpha - 1.0) <= tol && std::abs(a.norm() - 1.0) <= tol;
}

CriterionValue busch_criterion(const Vec3& a, const Vec3& b, double tol) {
  require_unit_alpha_effect(a, "busch_criterion");
  require_unit_alpha_effect(b, "busch_criterion");
  CriterionValue out;
  out.value = (a + b).norm() + (a - b).norm();
  out.threshold = 2.0;
  out.jm = out.value <= out.threshold + tol;
  return out;
}

CriterionValue molnar_criterion(const Vec3& a, const Vec3& b, double tol) {
  if (!is_valid_effect_params(a.norm(), a, kCriterionTol) || !is_valid_effect_params(b.norm(), b, kCriterionTol)) {
    throw PreconditionError("molnar_criterion: (||v||, v) must be an effect, so ||v|| <= 1");
  }
  if (parallel(a, b)) {
    throw PreconditionError("molnar_criterion: vectors are parallel; the criterion does not apply");
  }
  CriterionValue out;
  out.value = (a + b).norm() + a.norm() + b.norm();
  out.threshold = 2.0;
  out.jm = out.value <= out.threshold + tol;
  return out;
}

CriterionValue liu_criterion(const Vec3& a, double beta, const Vec3& b, double tol) {
  require_unit_alpha_effect(a, "liu_criterion");
  if (!is_valid_effect_params(beta, b, kCriterionTol)) {
    throw PreconditionError("liu_criterion: (beta, b) is not an effect (beta = " + fmt(beta) +
                            ", ||b|| = " + fmt(b.norm()) + ")");
  }
  if (!orthogonal(a, b)) {
    throw PreconditionError("liu_criterion: a and b are not orthogonal (normalized dot " +
                            fmt(normalized_dot(a, b)) + ")");
  }
  const double nb2 = b.squaredNorm();
  CriterionValue out;
  out.value = 2.0 * a.norm();
  out.threshold = std::sqrt(std::max(0.0, beta * beta - nb2)) + std::sqrt(std::max(0.0, (2.0 - beta) * (2.0 - beta) - nb2));
  out.jm = out.value <= out.threshold + tol;
  return out;
}

CriterionValue three_orthogonal_criterion(const Vec3& a, const Vec3& b, const Vec3& c, double tol) {
  require_unit_alpha_effect(a, "three_orthogonal_criterion");
  require_unit_alpha_effect(b, "three_orthogonal_criterion");
  require_unit_alpha_effect(c, "three_orthogonal_criterion");
  if (!orthogonal(a, b) || !orthogonal(a, c) || !orthogonal(b, c)) {
    throw PreconditionError("three_orthogonal_criterion: vectors are not pairwise orthogonal");
  }
  CriterionValue out;
  out.value = a.squaredNorm() + b.squaredNorm() + c.squaredNorm();
  out.threshold = 1.0;
  out.jm = out.value <= out.threshold + tol;
  return out;
}

ProductObservable boundary_joint(const Vec3& a, const Vec3& b) {
  const double value = busch_criterion(a, b).value;
  if (std::abs(value - 2.0) > kBoundaryTol) {
    throw PreconditionError("boundary_joint: ||a+b|| + ||a-b|| = " + fmt(value) + " is not on the boundary 2");
  }
  if (a.norm() <= 1e-12 || b.norm() <= 1e-12) {
    throw PreconditionError("boundary_joint: zero Bloch vector gives a degenerate (trivial) parent");
  }
  std::vector<HermitianOperator> cells;
  for (int i : {1, 0}) {
    for (int j : {1, 0}) {
      const double si = i == 1 ? 1.0 : -1.0;
      const double sj = j == 1 ? 1.0 : -1.0;
      const Vec3 n = 0.5 * (si * a + sj * b);
      if (n.norm() <= 1e-12) {
        throw PreconditionError("boundary_joint: n_" + std::to_string(i) + std::to_string(j) + " vanishes (a = +-b)");
      }
      cells.push_back(effect_from_bloch(n.norm(), n));
    }
  }
  return ProductObservable({{"1", "0"}, {"1", "0"}}, std::move(cells));
}

ProductObservable symmetric_pair_joint(const Vec3& a, const Vec3& b) {
  const double worst = std::max((a + b).norm(), (a - b).norm());
  if (worst > 1.0 + kBoundaryTol) {
    throw PreconditionError("symmetric_pair_joint: max ||a +- b|| = " + fmt(worst) + " exceeds 1");
  }
  std::vector<HermitianOperator> cells;
  for (double si : {1.0, -1.0})
    for (double sj : {1.0, -1.0}) cells.push_back(effect_from_bloch(0.5, 0.5 * (si * a + sj * b)));
  return ProductObservable({{"1", "0"}, {"1", "0"}}, std::move(cells));
}

Interval gamma_interval(const Vec3& a, double beta) {
  const double na = a.norm();
  if (!(na > 0.0)) throw PreconditionError("gamma_interval: requires ||a|| > 0");
  if (!(na < 1.0)) throw PreconditionError("gamma_interval: requires ||a|| < 1, got " + fmt(na));
  const double half_gap = 0.5 * (1.0 - na * na);
  if (!(beta > half_gap)) {
    throw PreconditionError("gamma_interval: requires beta > (1 - ||a||^2)/2 = " + fmt(half_gap) + ", got " +
                            fmt(beta));
  }
  if (!(beta < 2.0 * half_gap)) {
    throw PreconditionError("gamma_interval: requires beta < 1 - ||a||^2 = " + fmt(2.0 * half_gap) + ", got " +
                            fmt(beta));
  }
  return {beta - half_gap, half_gap};
}

ProductObservable joint_from_corner(const HermitianOperator& a1, const HermitianOperator& b1,
                                    const HermitianOperator& g11) {
  const auto id = HermitianOperator::identity(g11.dim());
  return ProductObservable({{"1", "0"}, {"1", "0"}}, {g11, a1 - g11, b1 - g11, id - a1 - b1 + g11});
}

ProductObservable gamma_family_member(const Vec3& a, double beta, const Vec3& b_hat, double gamma) {
  gamma_interval(a, beta);
  if (std::abs(b_hat.norm() - 1.0) > kDirectionTol) {
    throw PreconditionError("gamma_family_member: b_hat is not a unit vector");
  }
  if (!orthogonal(a, b_hat)) throw PreconditionError("gamma_family_member: b_hat is not orthogonal to a");
  ProductObservable g =
      joint_from_corner(effect_from_bloch(1.0, a), effect_from_bloch(beta, beta * b_hat), effect_from_bloch(gamma, gamma * b_hat));
  std::string bad;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (!is_effect(g.cell_at(c), 1e-12)) {
      if (!bad.empty()) bad += ", ";
      bad += "G(" + g.observable().outcomes()[c].substr(0, 1) + "," + g.observable().outcomes()[c].substr(1) + ")";
    }
  }
  if (!bad.empty()) {
    throw PreconditionError("gamma_family_member: gamma = " + fmt(gamma) + " yields non-effect cells " + bad);
  }
  return g;
}

bool is_qubit_simple(const Observable& a) { return a.dim() == 2 && a.size() == 2; }

}  // namespace jm
