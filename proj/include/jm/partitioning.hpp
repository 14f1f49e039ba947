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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jm/bloch.hpp"
#include "jm/feasibility.hpp"
#include "jm/observable.hpp"

namespace jm {

inline constexpr std::size_t kMaxPartitionOutcomes = 20;

/// Two-outcome coarse-graining A^X with outcomes {"1", "0"}:
/// A^X(1) = sum_{x in X} A(x), A^X(0) = sum_{x not in X} A(x).
Observable partition(const Observable& a, const LabelList& subset);
Observable partition(const Observable& a, const std::vector<bool>& members);

/// Sorted labels joined by ','. The empty set is "".
std::string canonical_subset(LabelList subset);

struct Partitioning {
  LabelList subset;       // outcomes mapped to '1', in parent order
  std::size_t type = 0;   // |X|
  Observable observable;
};

/// All 2^|Omega| partitionings in mask order (bit k set <=> outcome k in X).
std::vector<Partitioning> enumerate_partitionings(const Observable& a);

/// Joint observable of A^X and B^Y obtained from a joint G of A and B:
/// G~(1,1) = G(X x Y), G~(1,0) = G(X x not Y), G~(0,1) = G(not X x Y),
/// G~(0,0) = G(not X x not Y).
ProductObservable forward_partition_joint(const ProductObservable& g, const LabelList& x, const LabelList& y);

struct CompatibilityMatrix {
  std::vector<LabelList> row_subsets;
  std::vector<LabelList> col_subsets;
  std::vector<std::string> row_keys;
  std::vector<std::string> col_keys;
  /// cells[r][c] decides A^{X_r} against B^{Y_c}.
  std::vector<std::vector<FeasibilityReport>> cells;
  std::size_t feasible = 0;
  std::size_t infeasible = 0;
  std::size_t undetermined = 0;
};

/// Representative nontrivial subsets: |X| < |Omega|/2, plus for
/// |X| = |Omega|/2 the member of each complementary pair containing the
/// first outcome. Sorted by canonical key.
std::vector<LabelList> representative_subsets(const Observable& a);

CompatibilityMatrix partition_compatibility_matrix(const Observable& a, const Observable& b,
                                                   const FeasibilityOptions& opts = {});

struct ParadoxReport {
  CompatibilityMatrix matrix;
  /// Result of the numerical decision on (G, F) alone.
  FeasibilityReport numeric_global;
  /// Global verdict after the triple-implication route (if a context is given).
  FeasibilityReport global;
  std::optional<CriterionValue> triple;
  bool all_partitions_feasible = false;
  bool paradox = false;
  std::string explanation;
};

/// G and F are joints of qubit pairs (E^a, E^b) and (E^b, E^c). With a
/// context (a, b, c), a joint of G and F would be a joint of the three
/// marginals, so a violated three-observable criterion makes (G, F)
/// infeasible.
ParadoxReport partition_paradox_audit(const ProductObservable& g, const ProductObservable& f,
                                      const std::optional<std::array<Vec3, 3>>& triple_context,
                                      const FeasibilityOptions& opts = {});

}  // namespace jm
