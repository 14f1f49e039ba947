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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jm/bloch.hpp"
#include "jm/kernels.hpp"
#include "jm/observable.hpp"

namespace jm {

struct FeasibilityOptions {
  double tol = 1e-7;
  int max_iter = 20000;
  int restarts = 8;
  std::uint64_t seed = 0;
  kernels::Exec exec = kernels::Exec::Parallel;
};

enum class Verdict { Feasible, Infeasible, Undetermined };

/// Which piece of theory backs a verdict.
enum class Reason {
  None,            // numerical search only
  Eq3,             // ||a+b|| + ||a-b|| <= 2
  Eq4,             // ||a+b|| + ||a|| + ||b|| <= 2
  Eq5,             // orthogonal unbiased/biased pair
  Eq6,             // three orthogonal unbiased observables
  CommutingSharp,  // product joint of commuting observables with a sharp member per pair
  TrivialJoint,    // A(x) + B(y) <= I for some labeling
  TwoSharpPairwise // pairwise joint measurability plus two sharp members of a triple
};

const char* to_string(Verdict v);
/// JSON spelling; Reason::None maps to nullptr.
const char* to_string(Reason r);

struct FeasibilityReport {
  Verdict verdict = Verdict::Undetermined;
  Reason reason = Reason::None;
  /// How the verdict was reached, e.g. "criterion", "product", "numeric-pair",
  /// "numeric-alternating", "pair-implication", "triple-implication".
  std::string route;
  /// Max negative-eigenvalue magnitude over witness cells plus marginal residual.
  double residual = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  /// Criterion value minus threshold on analytic routes (NaN otherwise).
  double margin = std::numeric_limits<double>::quiet_NaN();
  std::optional<ProductObservable> witness;
  std::string note;
};

/// max_z max(0, -lambda_min(G(z))) + max marginal residual.
double witness_residual(const ProductObservable& g, std::span<const Observable> parents);

/// Analytic verdict for a simple qubit pair when one of the two-observable
/// criteria applies under some outcome labeling.
struct CriterionMatch {
  Reason reason = Reason::None;
  CriterionValue value;
};
std::optional<CriterionMatch> match_pair_criterion(const Observable& a, const Observable& b);
std::optional<CriterionMatch> match_triple_criterion(const Observable& a, const Observable& b, const Observable& c);

/// Full decision procedure: commuting-sharp product, analytic criteria,
/// trivial joint, then numerical search. The numerical path never returns
/// Infeasible.
FeasibilityReport decide(std::span<const Observable> parents, const FeasibilityOptions& opts = {});
FeasibilityReport decide(const Observable& a, const Observable& b, const FeasibilityOptions& opts = {});

/// Four-parameter search over G(1,1) = (gamma I + g.sigma)/2 for two simple
/// qubit observables (outcome order: first label plays the role of '1').
FeasibilityReport decide_pair_qubit_numeric(const Observable& a, const Observable& b,
                                            const FeasibilityOptions& opts = {});

/// Alternating projections between the marginal affine subspace and the
/// product of PSD cones, multistart with per-restart seeded streams.
FeasibilityReport decide_numeric(std::span<const Observable> parents, const FeasibilityOptions& opts = {});

/// For two-outcome A, B (first outcome = '1'): if A(1) + B(1) <= I returns
/// G(1,1) = 0, G(1,0) = A(1), G(0,1) = B(1), G(0,0) = I - A(1) - B(1).
std::optional<ProductObservable> trivial_joint_if_sum_leq_identity(const Observable& a, const Observable& b,
                                                                   double tol = kDefaultPsdTol);
/// Same, trying all four choices of which outcome plays '1'.
std::optional<ProductObservable> trivial_joint_any_labeling(const Observable& a, const Observable& b,
                                                           double tol = kDefaultPsdTol);

struct PairwiseGlobalReport {
  /// pairwise[i][j] for i < j; other entries are empty.
  std::vector<std::vector<std::optional<FeasibilityReport>>> pairwise;
  FeasibilityReport global;
  bool all_pairs_feasible = false;
};

PairwiseGlobalReport pairwise_vs_global(std::span<const Observable> parents, const FeasibilityOptions& opts = {});

}  // namespace jm
