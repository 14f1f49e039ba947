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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jm/operator.hpp"

namespace jm {

using Label = std::string;
using LabelList = std::vector<Label>;

/// Finite-outcome POVM: an ordered list of distinct outcome labels with one
/// effect per label. The constructor only checks structure (nonempty,
/// matching dimensions, distinct labels); positivity and normalization are
/// reported by validate().
class Observable {
 public:
  Observable(LabelList outcomes, std::vector<HermitianOperator> effects);

  int dim() const { return effects_.front().dim(); }
  std::size_t size() const { return effects_.size(); }
  const LabelList& outcomes() const { return outcomes_; }
  const std::vector<HermitianOperator>& effects() const { return effects_; }
  const HermitianOperator& effect(std::size_t i) const { return effects_.at(i); }
  const HermitianOperator& effect(const Label& label) const;
  std::optional<std::size_t> index_of(const Label& label) const;

  /// A(X) for X given as a membership mask over outcomes.
  HermitianOperator sum(const std::vector<bool>& members) const;

 private:
  LabelList outcomes_;
  std::vector<HermitianOperator> effects_;
};

/// Observable with scalar effects p_x * I.
Observable trivial_observable(int dim, const std::vector<double>& probabilities, LabelList outcomes = {});

struct EffectDiagnostics {
  Label label;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

struct ValidationReport {
  std::vector<EffectDiagnostics> effects;
  double normalization_residual = 0.0;  // ||sum_x A(x) - I||
  double tol = 0.0;
  bool passed = false;
};

ValidationReport validate(const Observable& a, double tol = kDefaultPsdTol);

bool is_sharp(const Observable& a, double tol = kDefaultPsdTol);
bool commute(const Observable& a, const Observable& b, double tol = kDefaultPsdTol);

/// Observable on the Cartesian product of n parent outcome lists. Cells are
/// stored row-major (last parent varies fastest).
class ProductObservable {
 public:
  ProductObservable(std::vector<LabelList> parents, std::vector<HermitianOperator> cells);

  const std::vector<LabelList>& parents() const { return parents_; }
  std::size_t arity() const { return parents_.size(); }
  int dim() const { return flat_.dim(); }
  std::size_t size() const { return flat_.size(); }
  /// Flattened view; labels are the joined parent labels.
  const Observable& observable() const { return flat_; }

  const HermitianOperator& cell(std::span<const std::size_t> index) const;
  const HermitianOperator& cell(std::size_t i, std::size_t j) const;
  const HermitianOperator& cell_at(std::size_t flat) const { return flat_.effect(flat); }
  std::size_t flat_index(std::span<const std::size_t> index) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  /// G(X1 x X2 x ... x Xn) for per-axis membership masks.
  HermitianOperator rectangle_sum(const std::vector<std::vector<bool>>& members) const;

 private:
  std::vector<LabelList> parents_;
  Observable flat_;
};

/// Label of a product cell. Parent labels that are all single characters are
/// concatenated ("1","0" -> "10"); otherwise they are joined with '|'.
Label joint_label(const std::vector<LabelList>& parents, std::span<const std::size_t> index);

Observable marginal(const ProductObservable& g, std::size_t axis);

struct CommutingProduct {
  ProductObservable joint;
  /// True when at least one parent is sharp, so the product is the unique joint.
  bool uniqueness_guaranteed = false;
};

/// G(x1,...,xn) = A1(x1)...An(xn) for pairwise commuting parents; the
/// product is symmetrized before the Hermiticity check.
CommutingProduct product_joint_commuting(std::span<const Observable> parents, double tol = kDefaultPsdTol);
CommutingProduct product_joint_commuting(const Observable& a, const Observable& b, double tol = kDefaultPsdTol);

/// Cellwise agreement of two product observables over the same parent label
/// sets (matched by label, not position).
bool joint_agreement(const ProductObservable& g, const ProductObservable& f, double tol = kDefaultPsdTol);

/// Largest cellwise operator-norm difference ||marginal_k(G)(x) - parent_k(x)||.
double marginal_residual(const ProductObservable& g, std::span<const Observable> parents);

}  // namespace jm
