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

#include "jm/observable.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace jm {

namespace {

HermitianOperator product_of(const std::vector<const HermitianOperator*>& factors) {
  Matrix m = factors.front()->matrix();
  for (std::size_t k = 1; k < factors.size(); ++k) m = m * factors[k]->matrix();
  return HermitianOperator(Matrix(0.5 * (m + m.adjoint())));
}

}  // namespace

Observable::Observable(LabelList outcomes, std::vector<HermitianOperator> effects)
    : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
  if (outcomes_.empty()) throw StructureError("observable needs at least one outcome");
  if (outcomes_.size() != effects_.size()) {
    throw StructureError("observable has " + std::to_string(outcomes_.size()) + " labels but " +
                         std::to_string(effects_.size()) + " effects");
  }
  const int d = effects_.front().dim();
  for (const auto& e : effects_) {
    if (e.dim() != d) throw StructureError("observable effects have mismatched dimensions");
  }
  std::set<Label> seen(outcomes_.begin(), outcomes_.end());
  if (seen.size() != outcomes_.size()) throw StructureError("observable outcome labels are not distinct");
}

const HermitianOperator& Observable::effect(const Label& label) const {
  auto idx = index_of(label);
  if (!idx) throw StructureError("unknown outcome label '" + label + "'");
  return effects_[*idx];
}

std::optional<std::size_t> Observable::index_of(const Label& label) const {
  auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
  if (it == outcomes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - outcomes_.begin());
}

HermitianOperator Observable::sum(const std::vector<bool>& members) const {
  if (members.size() != size()) throw StructureError("membership mask size does not match outcome count");
  HermitianOperator total = HermitianOperator::zero(dim());
  for (std::size_t i = 0; i < size(); ++i)
    if (members[i]) total += effects_[i];
  return total;
}

Observable trivial_observable(int dim, const std::vector<double>& probabilities, LabelList outcomes) {
  if (outcomes.empty()) {
    for (std::size_t i = 0; i < probabilities.size(); ++i) outcomes.push_back(std::to_string(i));
  }
  std::vector<HermitianOperator> effects;
  for (double p : probabilities) effects.push_back(HermitianOperator::scalar(dim, p));
  return Observable(std::move(outcomes), std::move(effects));
}

ValidationReport validate(const Observable& a, double tol) {
  ValidationReport report;
  report.tol = tol;
  bool ok = true;
  HermitianOperator total = HermitianOperator::zero(a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& e = a.effect(i);
    EffectDiagnostics diag{a.outcomes()[i], min_eigenvalue(e), max_eigenvalue(e)};
    ok = ok && diag.min_eigenvalue >= -tol && diag.max_eigenvalue <= 1.0 + tol;
    report.effects.push_back(std::move(diag));
    total += e;
  }
  report.normalization_residual = operator_norm(total - HermitianOperator::identity(a.dim()));
  report.passed = ok && report.normalization_residual <= tol;
  return report;
}

bool is_sharp(const Observable& a, double tol) {
  for (const auto& e : a.effects()) {
    if (spectral_norm(e.matrix() * e.matrix() - e.matrix()) > tol) return false;
  }
  return true;
}

bool commute(const Observable& a, const Observable& b, double tol) {
  if (a.dim() != b.dim()) throw StructureError("commute: observables act on different dimensions");
  for (const auto& x : a.effects())
    for (const auto& y : b.effects())
      if (commutator_norm(x, y) > tol) return false;
  return true;
}

Label joint_label(const std::vector<LabelList>& parents, std::span<const std::size_t> index) {
  bool compact = std::all_of(parents.begin(), parents.end(), [](const LabelList& l) {
    return std::all_of(l.begin(), l.end(), [](const Label& s) { return s.size() == 1; });
  });
  Label out;
  for (std::size_t k = 0; k < parents.size(); ++k) {
    if (!compact && k > 0) out += '|';
    out += parents[k].at(index[k]);
  }
  return out;
}

namespace {

std::vector<std::size_t> unflatten(const std::vector<LabelList>& parents, std::size_t flat) {
  std::vector<std::size_t> idx(parents.size());
  for (std::size_t k = parents.size(); k-- > 0;) {
    idx[k] = flat % parents[k].size();
    flat /= parents[k].size();
  }
  return idx;
}

Observable flatten(const std::vector<LabelList>& parents, std::vector<HermitianOperator> cells) {
  if (parents.empty()) throw StructureError("product observable needs at least one parent");
  std::size_t count = 1;
  for (const auto& p : parents) {
    if (p.empty()) throw StructureError("product observable parent has no outcomes");
    count *= p.size();
  }
  if (cells.size() != count) {
    throw StructureError("product observable expects " + std::to_string(count) + " cells, got " +
                         std::to_string(cells.size()));
  }
  LabelList labels;
  labels.reserve(count);
  for (std::size_t f = 0; f < count; ++f) labels.push_back(joint_label(parents, unflatten(parents, f)));
  return Observable(std::move(labels), std::move(cells));
}

}  // namespace

ProductObservable::ProductObservable(std::vector<LabelList> parents, std::vector<HermitianOperator> cells)
    : parents_(std::move(parents)), flat_(flatten(parents_, std::move(cells))) {}

std::size_t ProductObservable::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != parents_.size()) throw StructureError("product index has wrong arity");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < parents_.size(); ++k) {
    if (index[k] >= parents_[k].size()) throw StructureError("product index out of range");
    flat = flat * parents_[k].size() + index[k];
  }
  return flat;
}

std::vector<std::size_t> ProductObservable::multi_index(std::size_t flat) const { return unflatten(parents_, flat); }

const HermitianOperator& ProductObservable::cell(std::span<const std::size_t> index) const {
  return flat_.effect(flat_index(index));
}

const HermitianOperator& ProductObservable::cell(std::size_t i, std::size_t j) const {
  const std::size_t idx[2] = {i, j};
  return cell(idx);
}

HermitianOperator ProductObservable::rectangle_sum(const std::vector<std::vector<bool>>& members) const {
  if (members.size() != parents_.size()) throw StructureError("rectangle needs one mask per parent");
  for (std::size_t k = 0; k < parents_.size(); ++k)
    if (members[k].size() != parents_[k].size()) throw StructureError("rectangle mask size mismatch");
  HermitianOperator total = HermitianOperator::zero(dim());
  for (std::size_t f = 0; f < size(); ++f) {
    const auto idx = multi_index(f);
    bool inside = true;
    for (std::size_t k = 0; k < idx.size() && inside; ++k) inside = members[k][idx[k]];
    if (inside) total += flat_.effect(f);
  }
  return total;
}

Observable marginal(const ProductObservable& g, std::size_t axis) {
  if (axis >= g.arity()) throw StructureError("marginal axis out of range");
  const auto& labels = g.parents()[axis];
  std::vector<HermitianOperator> effects(labels.size(), HermitianOperator::zero(g.dim()));
  for (std::size_t f = 0; f < g.size(); ++f) effects[g.multi_index(f)[axis]] += g.cell_at(f);
  return Observable(labels, std::move(effects));
}

CommutingProduct product_joint_commuting(std::span<const Observable> parents, double tol) {
  if (parents.size() < 2) throw StructureError("product joint needs at least two parents");
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i].dim() != parents[0].dim()) throw StructureError("product joint: dimension mismatch");
    for (std::size_t j = i + 1; j < parents.size(); ++j) {
      if (!commute(parents[i], parents[j], tol)) {
        throw PreconditionError("product joint requires commuting observables (parents " + std::to_string(i) +
                                " and " + std::to_string(j) + " do not commute)");
      }
    }
  }
  std::vector<LabelList> labels;
  std::size_t count = 1;
  for (const auto& p : parents) {
    labels.push_back(p.outcomes());
    count *= p.size();
  }
  std::vector<HermitianOperator> cells;
  cells.reserve(count);
  std::vector<const HermitianOperator*> factors(parents.size());
  for (std::size_t f = 0; f < count; ++f) {
    const auto idx = unflatten(labels, f);
    for (std::size_t k = 0; k < parents.size(); ++k) factors[k] = &parents[k].effect(idx[k]);
    cells.push_back(product_of(factors));
  }
  std::size_t sharp = 0;
  for (const auto& p : parents) sharp += is_sharp(p, tol) ? 1 : 0;
  return {ProductObservable(std::move(labels), std::move(cells)), sharp + 1 >= parents.size()};
}

CommutingProduct product_joint_commuting(const Observable& a, const Observable& b, double tol) {
  const Observable pair[2] = {a, b};
  return product_joint_commuting(std::span<const Observable>(pair), tol);
}

bool joint_agreement(const ProductObservable& g, const ProductObservable& f, double tol) {
  if (g.arity() != f.arity() || g.dim() != f.dim()) throw StructureError("joint_agreement: structure mismatch");
  // Per-axis permutation from g's label order to f's.
  std::vector<std::vector<std::size_t>> perm(g.arity());
  for (std::size_t k = 0; k < g.arity(); ++k) {
    const auto& gl = g.parents()[k];
    const auto& fl = f.parents()[k];
    if (gl.size() != fl.size()) throw StructureError("joint_agreement: parent outcome sets differ");
    for (const auto& label : gl) {
      auto it = std::find(fl.begin(), fl.end(), label);
      if (it == fl.end()) throw StructureError("joint_agreement: label '" + label + "' missing from second joint");
      perm[k].push_back(static_cast<std::size_t>(it - fl.begin()));
    }
  }
  for (std::size_t c = 0; c < g.size(); ++c) {
    auto idx = g.multi_index(c);
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = perm[k][idx[k]];
    if (operator_norm(g.cell_at(c) - f.cell(idx)) > tol) return false;
  }
  return true;
}

double marginal_residual(const ProductObservable& g, std::span<const Observable> parents) {
  if (parents.size() != g.arity()) throw StructureError("marginal_residual: parent count mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < parents.size(); ++k) {
    const Observable m = marginal(g, k);
    if (m.size() != parents[k].size()) throw StructureError("marginal_residual: outcome count mismatch");
    for (std::size_t x = 0; x < m.size(); ++x) {
      worst = std::max(worst, operator_norm(m.effect(x) - parents[k].effect(m.outcomes()[x])));
    }
  }
  return worst;
}

}  // namespace jm
