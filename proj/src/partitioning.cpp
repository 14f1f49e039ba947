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

#include "jm/partitioning.hpp"

#include <algorithm>
#include <numeric>

namespace jm {

namespace {

std::vector<bool> mask_of(const Observable& a, const LabelList& subset) {
  std::vector<bool> mask(a.size(), false);
  for (const auto& label : subset) {
    auto idx = a.index_of(label);
    if (!idx) throw StructureError("partition: unknown outcome label '" + label + "'");
    mask[*idx] = true;
  }
  return mask;
}

std::vector<bool> complement(std::vector<bool> mask) {
  mask.flip();
  return mask;
}

LabelList labels_in(const Observable& a, const std::vector<bool>& mask) {
  LabelList out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mask[i]) out.push_back(a.outcomes()[i]);
  return out;
}

bool close_to(const HermitianOperator& x, const HermitianOperator& y, double tol) {
  return operator_norm(x - y) <= tol;
}

// +1 if effect i of the simple qubit observable m has Bloch vector +v.
std::vector<double> bloch_signs(const Observable& m, const Vec3& v) {
  std::vector<double> out;
  for (const auto& e : m.effects()) out.push_back(BlochEffect::from_operator(e).a.dot(v) >= 0 ? 1.0 : -1.0);
  return out;
}

// H((i,j),(j',k)) = delta_{jj'} (I + (s_i a + s_j b + s_k c).sigma)/8.
ProductObservable triple_witness(const ProductObservable& g, const ProductObservable& f, const Vec3& va,
                                 const Vec3& vb, const Vec3& vc) {
  const auto sa = bloch_signs(marginal(g, 0), va);
  const auto sb = bloch_signs(marginal(g, 1), vb);
  const auto sb2 = bloch_signs(marginal(f, 0), vb);
  const auto sc = bloch_signs(marginal(f, 1), vc);
  std::vector<HermitianOperator> cells;
  for (std::size_t gi = 0; gi < g.size(); ++gi) {
    const auto ij = g.multi_index(gi);
    for (std::size_t fi = 0; fi < f.size(); ++fi) {
      const auto jk = f.multi_index(fi);
      if (sb[ij[1]] != sb2[jk[0]]) {
        cells.push_back(HermitianOperator::zero(2));
        continue;
      }
      const Vec3 n = sa[ij[0]] * va + sb[ij[1]] * vb + sc[jk[1]] * vc;
      cells.push_back(effect_from_bloch(0.25, 0.25 * n));
    }
  }
  return ProductObservable({g.observable().outcomes(), f.observable().outcomes()}, std::move(cells));
}

}  // namespace

Observable partition(const Observable& a, const std::vector<bool>& members) {
  return Observable({"1", "0"}, {a.sum(members), a.sum(complement(members))});
}

Observable partition(const Observable& a, const LabelList& subset) { return partition(a, mask_of(a, subset)); }

std::string canonical_subset(LabelList subset) {
  std::sort(subset.begin(), subset.end());
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += subset[i];
  }
  return out;
}

std::vector<Partitioning> enumerate_partitionings(const Observable& a) {
  if (a.size() > kMaxPartitionOutcomes) {
    throw PreconditionError("enumerate_partitionings: " + std::to_string(a.size()) + " outcomes exceed the limit of " +
                            std::to_string(kMaxPartitionOutcomes));
  }
  const std::size_t n = a.size();
  std::vector<Partitioning> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> mask(n);
    for (std::size_t k = 0; k < n; ++k) mask[k] = (bits >> k) & 1U;
    LabelList subset = labels_in(a, mask);
    const std::size_t type = subset.size();
    out.push_back({std::move(subset), type, partition(a, mask)});
  }
  return out;
}

ProductObservable forward_partition_joint(const ProductObservable& g, const LabelList& x, const LabelList& y) {
  if (g.arity() != 2) throw StructureError("forward_partition_joint needs a two-parent joint observable");
  const Observable row_view(g.parents()[0], std::vector<HermitianOperator>(g.parents()[0].size(), HermitianOperator::zero(g.dim())));
  const Observable col_view(g.parents()[1], std::vector<HermitianOperator>(g.parents()[1].size(), HermitianOperator::zero(g.dim())));
  const auto mx = mask_of(row_view, x);
  const auto my = mask_of(col_view, y);
  const auto nx = complement(mx);
  const auto ny = complement(my);
  return ProductObservable({{"1", "0"}, {"1", "0"}},
                           {g.rectangle_sum({mx, my}), g.rectangle_sum({mx, ny}), g.rectangle_sum({nx, my}),
                            g.rectangle_sum({nx, ny})});
}

std::vector<LabelList> representative_subsets(const Observable& a) {
  if (a.size() > kMaxPartitionOutcomes) {
    throw PreconditionError("partition matrix: too many outcomes (" + std::to_string(a.size()) + ")");
  }
  const std::size_t n = a.size();
  std::vector<LabelList> out;
  for (std::size_t bits = 1; bits + 1 < (std::size_t{1} << n); ++bits) {
    std::vector<bool> mask(n);
    for (std::size_t k = 0; k < n; ++k) mask[k] = (bits >> k) & 1U;
    const auto size = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    if (2 * size < n || (2 * size == n && mask[0])) out.push_back(labels_in(a, mask));
  }
  std::sort(out.begin(), out.end(),
            [](const LabelList& l, const LabelList& r) { return canonical_subset(l) < canonical_subset(r); });
  return out;
}

CompatibilityMatrix partition_compatibility_matrix(const Observable& a, const Observable& b,
                                                   const FeasibilityOptions& opts) {
  if (a.dim() != b.dim()) throw StructureError("partition matrix: dimension mismatch");
  CompatibilityMatrix m;
  m.row_subsets = representative_subsets(a);
  m.col_subsets = representative_subsets(b);
  for (const auto& s : m.row_subsets) m.row_keys.push_back(canonical_subset(s));
  for (const auto& s : m.col_subsets) m.col_keys.push_back(canonical_subset(s));
  const std::size_t rows = m.row_subsets.size(), cols = m.col_subsets.size();

  std::vector<Observable> row_obs, col_obs;
  for (const auto& s : m.row_subsets) row_obs.push_back(partition(a, s));
  for (const auto& s : m.col_subsets) col_obs.push_back(partition(b, s));

  FeasibilityOptions cell_opts = opts;
  cell_opts.exec = kernels::Exec::Serial;
  std::vector<FeasibilityReport> flat(rows * cols);
  kernels::for_each_index(opts.exec, rows * cols, [&](std::size_t k) {
    flat[k] = decide(row_obs[k / cols], col_obs[k % cols], cell_opts);
  });
  m.cells.assign(rows, {});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto& cell = flat[r * cols + c];
      switch (cell.verdict) {
        case Verdict::Feasible: ++m.feasible; break;
        case Verdict::Infeasible: ++m.infeasible; break;
        case Verdict::Undetermined: ++m.undetermined; break;
      }
      m.cells[r].push_back(std::move(cell));
    }
  }
  return m;
}

ParadoxReport partition_paradox_audit(const ProductObservable& g, const ProductObservable& f,
                                      const std::optional<std::array<Vec3, 3>>& triple_context,
                                      const FeasibilityOptions& opts) {
  if (g.arity() != 2 || f.arity() != 2 || g.dim() != 2 || f.dim() != 2) {
    throw StructureError("paradox audit needs two-parent qubit joint observables");
  }
  const Observable g0 = marginal(g, 0), g1 = marginal(g, 1), f0 = marginal(f, 0), f1 = marginal(f, 1);
  for (const auto* m : {&g0, &g1, &f0, &f1}) {
    if (!is_qubit_simple(*m)) throw StructureError("paradox audit: marginals must be simple qubit observables");
  }
  const bool shared = close_to(g1.effect(0), f0.effect(0), 1e-8) || close_to(g0.effect(0), f0.effect(0), 1e-8) ||
                      close_to(g1.effect(0), f1.effect(0), 1e-8) || close_to(g0.effect(0), f1.effect(0), 1e-8);
  if (!shared) throw PreconditionError("paradox audit: G and F do not share a common parent observable");

  ParadoxReport report;
  report.matrix = partition_compatibility_matrix(g.observable(), f.observable(), opts);
  report.all_partitions_feasible = report.matrix.feasible == report.matrix.cells.size() * (report.matrix.cells.empty() ? 0 : report.matrix.cells.front().size());

  const Observable pair[2] = {g.observable(), f.observable()};
  report.numeric_global = decide(std::span<const Observable>(pair), opts);
  report.global = report.numeric_global;

  if (triple_context) {
    const auto& [va, vb, vc] = *triple_context;
    const bool consistent = close_to(g0.effect(0), effect_from_bloch(1.0, va), 1e-8) &&
                            close_to(g1.effect(0), effect_from_bloch(1.0, vb), 1e-8) &&
                            close_to(f0.effect(0), effect_from_bloch(1.0, vb), 1e-8) &&
                            close_to(f1.effect(0), effect_from_bloch(1.0, vc), 1e-8);
    if (!consistent) {
      throw PreconditionError("paradox audit: marginals of G and F do not match E^a, E^b and E^b, E^c");
    }
    report.triple = three_orthogonal_criterion(va, vb, vc);
    if (!report.triple->jm) {
      FeasibilityReport implied;
      implied.verdict = Verdict::Infeasible;
      implied.reason = Reason::Eq6;
      implied.route = "triple-implication";
      implied.margin = report.triple->margin();
      implied.residual = report.numeric_global.residual;
      implied.iterations = report.numeric_global.iterations;
      implied.note = std::string("a joint of G and F would jointly measure E^a, E^b, E^c; numeric search alone: ") +
                     to_string(report.numeric_global.verdict);
      report.global = std::move(implied);
    } else {
      auto h = triple_witness(g, f, va, vb, vc);
      const Observable pair_obs[2] = {g.observable(), f.observable()};
      const double residual = witness_residual(h, pair_obs);
      if (residual <= 1e-9) {
        FeasibilityReport built;
        built.verdict = Verdict::Feasible;
        built.reason = Reason::Eq6;
        built.route = "triple-witness";
        built.margin = report.triple->margin();
        built.residual = residual;
        built.witness = std::move(h);
        built.note = "G and F are the two-marginals of the joint of E^a, E^b, E^c";
        report.global = std::move(built);
      }
    }
  }
  report.paradox = report.all_partitions_feasible && report.global.verdict == Verdict::Infeasible;
  if (report.paradox) {
    report.explanation = "every nontrivial partitioning pair is jointly measurable but G and F are not";
  } else if (report.global.verdict == Verdict::Feasible) {
    report.explanation = "G and F are jointly measurable";
  } else if (!report.all_partitions_feasible) {
    report.explanation = "some partitioning pair is not shown jointly measurable";
  } else {
    report.explanation = "global joint measurability of G and F is undetermined";
  }
  return report;
}

}  // namespace jm
