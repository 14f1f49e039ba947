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

#include <Eigen/Dense>

#include "jm/observable.hpp"
#include "jm/operator.hpp"

namespace jm {

using Vec3 = Eigen::Vector3d;

/// Absolute slack on criterion thresholds (value <= threshold + tol).
inline constexpr double kCriterionTol = 1e-12;
/// Absolute tolerance on normalized dot products for orthogonality and
/// parallelism hypotheses.
inline constexpr double kDirectionTol = 1e-10;
/// Absolute tolerance on the Busch boundary equality.
inline constexpr double kBoundaryTol = 1e-9;

/// Qubit effect (alpha I + a.sigma) / 2.
struct BlochEffect {
  double alpha = 0.0;
  Vec3 a = Vec3::Zero();

  HermitianOperator op() const;
  /// alpha = tr E, a_k = tr(E sigma_k). Requires dim 2.
  static BlochEffect from_operator(const HermitianOperator& e);
};

HermitianOperator effect_from_bloch(double alpha, const Vec3& a);

/// Two-outcome qubit observable with outcomes "1" (the given effect) and
/// "0" (its complement), in that order.
struct SimpleQubitObservable {
  BlochEffect one;

  HermitianOperator effect_one() const { return one.op(); }
  HermitianOperator effect_zero() const { return HermitianOperator::identity(2) - one.op(); }
  Observable observable() const;
};

Observable qubit_observable(double alpha, const Vec3& a);
/// Sharp-or-unsharp unbiased qubit observable E^{1,a}.
inline Observable qubit_observable(const Vec3& a) { return qubit_observable(1.0, a); }

bool is_valid_effect_params(double alpha, const Vec3& a, double tol = 0.0);
bool is_nontrivial_projection_params(double alpha, const Vec3& a, double tol = kDirectionTol);

/// Scalar criterion outcome. margin() > 0 means the threshold is violated.
struct CriterionValue {
  double value = 0.0;
  double threshold = 0.0;
  bool jm = false;
  double margin() const { return value - threshold; }
};

/// ||a + b|| + ||a - b|| <= 2 for alpha = beta = 1.
CriterionValue busch_criterion(const Vec3& a, const Vec3& b, double tol = kCriterionTol);
/// ||a + b|| + ||a|| + ||b|| <= 2 for alpha = ||a||, beta = ||b||, a not parallel to b.
CriterionValue molnar_criterion(const Vec3& a, const Vec3& b, double tol = kCriterionTol);
/// 2||a|| <= sqrt(beta^2 - ||b||^2) + sqrt((2 - beta)^2 - ||b||^2) for alpha = 1, a orthogonal to b.
/// value holds the left side and threshold the right side.
CriterionValue liu_criterion(const Vec3& a, double beta, const Vec3& b, double tol = kCriterionTol);
/// ||a||^2 + ||b||^2 + ||c||^2 <= 1 for pairwise orthogonal a, b, c with unit alpha.
CriterionValue three_orthogonal_criterion(const Vec3& a, const Vec3& b, const Vec3& c,
                                          double tol = kCriterionTol);

/// The unique joint observable of E^{1,a} and E^{1,b} on the Busch boundary:
/// G(i,j) = ||n_ij|| (I + n_ij/||n_ij|| . sigma) / 2 with
/// n_ij = ((-1)^{i+1} a + (-1)^{j+1} b) / 2.
ProductObservable boundary_joint(const Vec3& a, const Vec3& b);

/// G(i,j) = (I + ((-1)^{i+1} a + (-1)^{j+1} b).sigma) / 4, the two-outcome
/// marginal of the uniform triple construction. Valid iff ||a +- b|| <= 1.
ProductObservable symmetric_pair_joint(const Vec3& a, const Vec3& b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

/// Parameter interval of the joint observables of E^{1,a} and E^{beta, beta b_hat}.
Interval gamma_interval(const Vec3& a, double beta);

/// Joint observable of E^{1,a} and E^{beta, beta b_hat} with
/// G(1,1) = gamma (I + b_hat.sigma) / 2; the other cells follow from the
/// marginal equations. Throws PreconditionError naming every cell that is
/// not an effect when gamma lies outside the interval.
ProductObservable gamma_family_member(const Vec3& a, double beta, const Vec3& b_hat, double gamma);

/// Cell (i,j) of a two-outcome qubit joint built from G(1,1) = g11 and the
/// parent effects A(1), B(1):
/// G(1,0) = A(1) - G(1,1), G(0,1) = B(1) - G(1,1), G(0,0) = I - A(1) - B(1) + G(1,1).
ProductObservable joint_from_corner(const HermitianOperator& a1, const HermitianOperator& b1,
                                    const HermitianOperator& g11);

bool is_qubit_simple(const Observable& a);

}  // namespace jm
