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
#include <optional>
#include <vector>

#include "jm/kernels.hpp"
#include "jm/observable.hpp"

namespace jm {

struct OrderOptions {
  /// Loewner-order slack for membership tests.
  double tol = kDefaultPsdTol;
  /// Minimum gap that counts as a strict improvement or violation.
  double eps = 1e-6;
  /// Random trials for refute_greatest.
  int trials = 200;
  std::uint64_t seed = 0;
  /// Cap on cyclic projection sweeps per projected trial.
  int projection_sweeps = 8;
  /// Bisection stopping width on the trace target.
  double bisection_tol = 1e-8;
  kernels::Exec exec = kernels::Exec::Parallel;
};

/// C <= A and C <= B (C is assumed to be an effect).
bool in_lb(const HermitianOperator& c, const HermitianOperator& a, const HermitianOperator& b,
           double tol = kDefaultPsdTol);

/// D in lb(A,B) with <psi|(D - C)psi> = gap > eps: proves C is not the
/// greatest element of lb(A,B).
struct Refutation {
  HermitianOperator d;
  Vector psi;
  double gap = 0.0;
  /// -1 for directed (deterministic) candidates, otherwise the random trial index.
  long trial = -1;
};

/// Searches lb(A,B) for an element not below C. Throws PreconditionError if
/// C is not in lb(A,B). An empty result is inconclusive.
///
/// Each trial picks a target X (a rank-one push above C, a random effect,
/// a random effect after a few cyclic projections, or C plus a random
/// effect) and takes the farthest point of the segment [C, X] that stays in
/// lb(A,B) up to tol/2. Qubit inputs first try directed candidates
/// (gamma I + t u.sigma)/2 along the Bloch vectors of A, B and A + B.
std::optional<Refutation> refute_greatest(const HermitianOperator& c, const HermitianOperator& a,
                                          const HermitianOperator& b, const OrderOptions& opts = {});

enum class Maximality { NotMaximal, MaximalWithin };

struct MaximalityReport {
  Maximality verdict = Maximality::MaximalWithin;
  /// Dominating element D with C <= D, D in lb(A,B), tr D - tr C > eps.
  std::optional<HermitianOperator> witness;
  double trace_gain = 0.0;
  double eps = 0.0;
};

/// Maximizes tr D over {D in lb(A,B) : C <= D} by bisection on a trace
/// target with cyclic projections as the feasibility oracle.
MaximalityReport maximality_probe(const HermitianOperator& c, const HermitianOperator& a,
                                  const HermitianOperator& b, const OrderOptions& opts = {});

enum class Tristate { Yes, No, Unknown };
const char* to_string(Tristate t);

struct CellAudit {
  Label a_outcome;
  Label b_outcome;
  bool in_lb = false;
  std::optional<Refutation> refutation;
  MaximalityReport maximality;
  /// Alternative joint observable built from a dominating lower bound
  /// (two-outcome parents only).
  std::optional<ProductObservable> alternative_joint;
};

struct OrderAudit {
  std::vector<CellAudit> cells;
  /// Yes only on the commuting-sharp route with no refutation; No when some
  /// cell was refuted.
  Tristate all_greatest = Tristate::Unknown;
  bool all_maximal = false;
  /// No when an alternative joint observable was constructed; Yes when
  /// all_greatest is Yes.
  Tristate unique = Tristate::Unknown;
  bool commuting_sharp = false;
};

OrderAudit joint_observable_order_audit(const ProductObservable& g, const Observable& a, const Observable& b,
                                        const OrderOptions& opts = {});

}  // namespace jm
