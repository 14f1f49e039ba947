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

#include "jm/feasibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace jm {

namespace {

constexpr double kHypothesisTol = 1e-9;
constexpr double kCommuteTol = 1e-9;

std::mt19937_64 restart_stream(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x6a6d7531u};
  return std::mt19937_64(seq);
}

std::vector<LabelList> labels_of(std::span<const Observable> parents) {
  std::vector<LabelList> out;
  for (const auto& p : parents) out.push_back(p.outcomes());
  return out;
}

void check_problem(std::span<const Observable> parents, double tol) {
  if (parents.size() < 2) throw StructureError("joint measurability needs at least two observables");
  for (const auto& p : parents) {
    if (p.dim() != parents[0].dim()) throw StructureError("observables act on different dimensions");
    const auto v = validate(p, std::max(tol, kDefaultPsdTol));
    if (!v.passed) {
      throw PreconditionError("input observable is not a valid POVM (normalization residual " +
                              std::to_string(v.normalization_residual) + ")");
    }
  }
}

// Bloch parameters of the effect of outcome `which` of a simple qubit observable.
BlochEffect bloch_of(const Observable& a, std::size_t which) { return BlochEffect::from_operator(a.effect(which)); }

bool unit_alpha(const BlochEffect& e) { return std::abs(e.alpha - 1.0) <= kHypothesisTol; }

bool orthogonal_vectors(const Vec3& u, const Vec3& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return true;
  return std::abs(u.dot(v) / (nu * nv)) <= kDirectionTol;
}

bool parallel_vectors(const Vec3& u, const Vec3& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return true;
  return std::abs(u.dot(v) / (nu * nv)) >= 1.0 - kDirectionTol;
}

// ---------------------------------------------------------------------------
// Nelder-Mead over (gamma, g) for the qubit pair reduction.

using Vec4 = Eigen::Vector4d;

struct PairParams {
  double alpha, beta;
  Vec3 a, b;
};

// Effect-validity violation max_cell (||v|| - c) of the four cells implied by
// G(1,1) = (gamma I + g.sigma)/2.
double pair_violation(const PairParams& p, const Vec4& x) {
  const double gamma = x(0);
  const Vec3 g = x.tail<3>();
  const double f11 = g.norm() - gamma;
  const double f10 = (p.a - g).norm() - (p.alpha - gamma);
  const double f01 = (p.b - g).norm() - (p.beta - gamma);
  const double f00 = (g - p.a - p.b).norm() - (2.0 - p.alpha - p.beta + gamma);
  return std::max(std::max(f11, f10), std::max(f01, f00));
}

struct SearchResult {
  Vec4 x = Vec4::Zero();
  double f = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

template <class F>
SearchResult nelder_mead(const F& f, const Vec4& x0, double step, int budget) {
  std::array<Vec4, 5> pts;
  std::array<double, 5> vals;
  pts[0] = x0;
  for (int i = 0; i < 4; ++i) {
    pts[i + 1] = x0;
    pts[i + 1](i) += step;
  }
  for (int i = 0; i < 5; ++i) vals[i] = f(pts[i]);
  int it = 0;
  std::array<int, 5> order{0, 1, 2, 3, 4};
  for (; it < budget; ++it) {
    std::sort(order.begin(), order.end(), [&](int l, int r) { return vals[l] < vals[r]; });
    const int best = order[0], worst = order[4], second = order[3];
    double size = 0.0;
    for (int i = 1; i < 5; ++i) size = std::max(size, (pts[order[i]] - pts[best]).cwiseAbs().maxCoeff());
    if (size < 1e-15 || vals[worst] - vals[best] <= 1e-17) break;
    Vec4 centroid = Vec4::Zero();
    for (int i = 0; i < 4; ++i) centroid += pts[order[i]];
    centroid /= 4.0;
    const Vec4 xr = centroid + (centroid - pts[worst]);
    const double fr = f(xr);
    if (fr < vals[best]) {
      const Vec4 xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const Vec4 xc = outside ? Vec4(centroid + 0.5 * (xr - centroid)) : Vec4(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = f(xc);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (int i = 1; i < 5; ++i) {
          const int k = order[i];
          pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
          vals[k] = f(pts[k]);
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], it};
}

// Repeated Nelder-Mead from the incumbent with shrinking initial simplices;
// restarting escapes the premature collapse typical on kinked objectives.
template <class F>
SearchResult polish(const F& f, Vec4 x0, int budget) {
  static constexpr double kSteps[] = {0.25, 0.05, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  SearchResult best{x0, f(x0), 0};
  for (int sweep = 0; sweep < 4 && best.iterations < budget; ++sweep) {
    const double before = best.f;
    for (double step : kSteps) {
      if (best.iterations >= budget) break;
      SearchResult r = nelder_mead(f, best.x, step, budget - best.iterations);
      const int used = best.iterations + r.iterations + 1;
      if (r.f < best.f) best = r;
      best.iterations = used;
    }
    if (!(best.f < before - 1e-16)) break;
  }
  return best;
}

ProductObservable pair_witness(const Observable& a, const Observable& b, const Vec4& x) {
  // First outcome of each parent plays '1'.
  const auto& a1 = a.effect(0);
  const auto& b1 = b.effect(0);
  const auto g11 = effect_from_bloch(x(0), x.tail<3>());
  const auto id = HermitianOperator::identity(2);
  return ProductObservable({a.outcomes(), b.outcomes()}, {g11, a1 - g11, b1 - g11, id - a1 - b1 + g11});
}

// ---------------------------------------------------------------------------
// Alternating projections for the generic problem.

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct AffineSystem {
  Eigen::MatrixXd constraints;  // m x K, one row per (parent, outcome)
  Eigen::MatrixXd projector;    // K x m, M^T (M M^T)^+
  RowMatrix rhs;                // m x d^2, vec of parent effects
  int dim = 0;
  std::size_t cells = 0;
};

AffineSystem build_affine(std::span<const Observable> parents) {
  AffineSystem sys;
  sys.dim = parents[0].dim();
  sys.cells = 1;
  std::size_t rows = 0;
  for (const auto& p : parents) {
    sys.cells *= p.size();
    rows += p.size();
  }
  const auto labels = labels_of(parents);
  sys.constraints = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(sys.cells));
  sys.rhs.resize(static_cast<Eigen::Index>(rows), sys.dim * sys.dim);
  std::vector<std::size_t> offset;
  std::size_t acc = 0;
  for (const auto& p : parents) {
    offset.push_back(acc);
    for (std::size_t x = 0; x < p.size(); ++x) {
      const Matrix& e = p.effect(x).matrix();
      sys.rhs.row(static_cast<Eigen::Index>(acc + x)) = Eigen::Map<const Eigen::RowVectorXcd>(e.data(), e.size());
    }
    acc += p.size();
  }
  for (std::size_t z = 0; z < sys.cells; ++z) {
    std::size_t rest = z;
    for (std::size_t k = parents.size(); k-- > 0;) {
      const std::size_t xk = rest % parents[k].size();
      rest /= parents[k].size();
      sys.constraints(static_cast<Eigen::Index>(offset[k] + xk), static_cast<Eigen::Index>(z)) = 1.0;
    }
  }
  const Eigen::MatrixXd gram = sys.constraints * sys.constraints.transpose();
  sys.projector = sys.constraints.transpose() * Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(gram).pseudoInverse();
  return sys;
}

void gather(const std::vector<Matrix>& cells, RowMatrix& x) {
  for (std::size_t z = 0; z < cells.size(); ++z)
    x.row(static_cast<Eigen::Index>(z)) = Eigen::Map<const Eigen::RowVectorXcd>(cells[z].data(), cells[z].size());
}

void scatter(const RowMatrix& x, std::vector<Matrix>& cells, int dim) {
  for (std::size_t z = 0; z < cells.size(); ++z) {
    Eigen::RowVectorXcd row = x.row(static_cast<Eigen::Index>(z));
    cells[z] = Eigen::Map<const Matrix>(row.data(), dim, dim);
    cells[z] = 0.5 * (cells[z] + cells[z].adjoint()).eval();
  }
}

// Projects onto the marginal subspace; returns the pre-projection constraint
// residual (max entry).
double affine_project(const AffineSystem& sys, std::vector<Matrix>& cells, RowMatrix& scratch) {
  gather(cells, scratch);
  const RowMatrix defect = sys.constraints.cast<Complex>() * scratch - sys.rhs;
  scratch -= sys.projector.cast<Complex>() * defect;
  scatter(scratch, cells, sys.dim);
  return defect.cwiseAbs().maxCoeff();
}

double affine_defect(const AffineSystem& sys, const std::vector<Matrix>& cells, RowMatrix& scratch) {
  gather(cells, scratch);
  return (sys.constraints.cast<Complex>() * scratch - sys.rhs).cwiseAbs().maxCoeff();
}

struct RestartOutcome {
  std::vector<Matrix> cells;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

RestartOutcome run_alternating(const AffineSystem& sys, std::size_t restart, const FeasibilityOptions& opts) {
  const int d = sys.dim;
  std::vector<Matrix> cells(sys.cells);
  if (restart == 0) {
    for (auto& c : cells) c = Matrix::Identity(d, d) / static_cast<double>(sys.cells);
  } else {
    auto rng = restart_stream(opts.seed, restart);
    for (auto& c : cells) c = random_hermitian(d, rng, 1.0 / static_cast<double>(sys.cells)).matrix();
  }
  RowMatrix scratch(static_cast<Eigen::Index>(sys.cells), d * d);
  affine_project(sys, cells, scratch);

  RestartOutcome best;
  std::vector<Matrix> clipped(cells.size());
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    clipped = cells;
    const double negative = kernels::clip_psd_batch(clipped, kernels::Exec::Serial);
    const double residual = negative + affine_defect(sys, cells, scratch);
    if (residual < best.residual) {
      best.residual = residual;
      best.cells = cells;
      best.iterations = it;
    }
    if (residual <= opts.tol) break;
    cells.swap(clipped);
    affine_project(sys, cells, scratch);
  }
  if (best.cells.empty()) best.cells = cells;
  best.iterations = std::max(best.iterations, it);
  return best;
}

ProductObservable cells_to_witness(std::span<const Observable> parents, const std::vector<Matrix>& cells) {
  std::vector<HermitianOperator> ops;
  ops.reserve(cells.size());
  for (const auto& c : cells) ops.emplace_back(c);
  return ProductObservable(labels_of(parents), std::move(ops));
}

Reason criterion_reason(int eq) {
  switch (eq) {
    case 3: return Reason::Eq3;
    case 4: return Reason::Eq4;
    case 5: return Reason::Eq5;
    default: return Reason::Eq6;
  }
}

FeasibilityReport analytic_report(const CriterionMatch& m, const std::string& route) {
  FeasibilityReport r;
  r.verdict = m.value.jm ? Verdict::Feasible : Verdict::Infeasible;
  r.reason = m.reason;
  r.route = route;
  r.margin = m.value.margin();
  return r;
}

bool pair_commuting_sharp(const Observable& a, const Observable& b) {
  return commute(a, b, kCommuteTol) && (is_sharp(a, kCommuteTol) || is_sharp(b, kCommuteTol));
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "FEASIBLE";
    case Verdict::Infeasible: return "INFEASIBLE";
    case Verdict::Undetermined: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::None: return nullptr;
    case Reason::Eq3: return "eq3";
    case Reason::Eq4: return "eq4";
    case Reason::Eq5: return "eq5";
    case Reason::Eq6: return "eq6";
    case Reason::CommutingSharp: return "commuting-sharp";
    case Reason::TrivialJoint: return "trivial-joint";
    case Reason::TwoSharpPairwise: return "two-sharp-pairwise";
  }
  return nullptr;
}

double witness_residual(const ProductObservable& g, std::span<const Observable> parents) {
  double negative = 0.0;
  for (std::size_t z = 0; z < g.size(); ++z) negative = std::max(negative, -min_eigenvalue(g.cell_at(z)));
  return negative + marginal_residual(g, parents);
}

std::optional<CriterionMatch> match_pair_criterion(const Observable& a, const Observable& b) {
  if (!is_qubit_simple(a) || !is_qubit_simple(b)) return std::nullopt;
  const std::array<BlochEffect, 2> pa{bloch_of(a, 0), bloch_of(a, 1)};
  const std::array<BlochEffect, 2> pb{bloch_of(b, 0), bloch_of(b, 1)};
  // alpha = 1 is labeling independent (the complement has 2 - alpha).
  if (unit_alpha(pa[0]) && unit_alpha(pb[0])) {
    return CriterionMatch{criterion_reason(3), busch_criterion(pa[0].a, pb[0].a)};
  }
  for (const auto& ea : pa) {
    for (const auto& eb : pb) {
      if (std::abs(ea.alpha - ea.a.norm()) <= kHypothesisTol && std::abs(eb.alpha - eb.a.norm()) <= kHypothesisTol &&
          !parallel_vectors(ea.a, eb.a)) {
        return CriterionMatch{criterion_reason(4), molnar_criterion(ea.a, eb.a)};
      }
    }
  }
  if (unit_alpha(pa[0]) && orthogonal_vectors(pa[0].a, pb[0].a)) {
    return CriterionMatch{criterion_reason(5), liu_criterion(pa[0].a, pb[0].alpha, pb[0].a)};
  }
  if (unit_alpha(pb[0]) && orthogonal_vectors(pa[0].a, pb[0].a)) {
    return CriterionMatch{criterion_reason(5), liu_criterion(pb[0].a, pa[0].alpha, pa[0].a)};
  }
  return std::nullopt;
}

std::optional<CriterionMatch> match_triple_criterion(const Observable& a, const Observable& b, const Observable& c) {
  if (!is_qubit_simple(a) || !is_qubit_simple(b) || !is_qubit_simple(c)) return std::nullopt;
  const BlochEffect pa = bloch_of(a, 0), pb = bloch_of(b, 0), pc = bloch_of(c, 0);
  if (!unit_alpha(pa) || !unit_alpha(pb) || !unit_alpha(pc)) return std::nullopt;
  if (!orthogonal_vectors(pa.a, pb.a) || !orthogonal_vectors(pa.a, pc.a) || !orthogonal_vectors(pb.a, pc.a)) {
    return std::nullopt;
  }
  return CriterionMatch{Reason::Eq6, three_orthogonal_criterion(pa.a, pb.a, pc.a)};
}

std::optional<ProductObservable> trivial_joint_if_sum_leq_identity(const Observable& a, const Observable& b,
                                                                   double tol) {
  if (a.size() != 2 || b.size() != 2) throw StructureError("trivial joint needs two-outcome observables");
  if (a.dim() != b.dim()) throw StructureError("trivial joint: dimension mismatch");
  const auto& a1 = a.effect(0);
  const auto& b1 = b.effect(0);
  const auto id = HermitianOperator::identity(a.dim());
  if (!loewner_leq(a1 + b1, id, tol)) return std::nullopt;
  return ProductObservable({a.outcomes(), b.outcomes()}, {HermitianOperator::zero(a.dim()), a1, b1, id - a1 - b1});
}

std::optional<ProductObservable> trivial_joint_any_labeling(const Observable& a, const Observable& b, double tol) {
  if (a.size() != 2 || b.size() != 2) throw StructureError("trivial joint needs two-outcome observables");
  const auto id = HermitianOperator::identity(a.dim());
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t q = 0; q < 2; ++q) {
      const auto& a1 = a.effect(p);
      const auto& b1 = b.effect(q);
      if (!loewner_leq(a1 + b1, id, tol)) continue;
      std::vector<HermitianOperator> cells;
      for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
          if (x == p && y == q) cells.push_back(HermitianOperator::zero(a.dim()));
          else if (x == p) cells.push_back(a1);
          else if (y == q) cells.push_back(b1);
          else cells.push_back(id - a1 - b1);
        }
      }
      return ProductObservable({a.outcomes(), b.outcomes()}, std::move(cells));
    }
  }
  return std::nullopt;
}

FeasibilityReport decide_pair_qubit_numeric(const Observable& a, const Observable& b, const FeasibilityOptions& opts) {
  if (!is_qubit_simple(a) || !is_qubit_simple(b)) {
    throw StructureError("decide_pair_qubit_numeric needs two-outcome qubit observables");
  }
  const BlochEffect ea = bloch_of(a, 0), eb = bloch_of(b, 0);
  const PairParams params{ea.alpha, eb.alpha, ea.a, eb.a};
  const auto f = [&](const Vec4& x) { return pair_violation(params, x); };

  const auto restarts = static_cast<std::size_t>(std::max(1, opts.restarts));
  std::vector<SearchResult> results(restarts);
  kernels::for_each_index(opts.exec, restarts, [&](std::size_t r) {
    Vec4 x0;
    if (r == 0) {
      // Jordan product of the two '1' effects.
      x0 << 0.5 * (ea.alpha * eb.alpha + ea.a.dot(eb.a)), 0.5 * (ea.alpha * eb.a + eb.alpha * ea.a);
    } else {
      auto rng = restart_stream(opts.seed, r);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      x0 << 0.5 * (1.0 + unit(rng)) * std::min(ea.alpha, eb.alpha), unit(rng), unit(rng), unit(rng);
      x0.tail<3>() *= 0.5 * x0(0);
    }
    results[r] = polish(f, x0, opts.max_iter);
  });
  std::size_t winner = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (results[r].f < results[winner].f) winner = r;

  FeasibilityReport report;
  report.route = "numeric-pair";
  report.iterations = results[winner].iterations;
  const Observable parents[2] = {a, b};
  ProductObservable candidate = pair_witness(a, b, results[winner].x);
  report.residual = witness_residual(candidate, parents);
  if (results[winner].f <= opts.tol) {
    report.verdict = Verdict::Feasible;
    report.witness = std::move(candidate);
  } else {
    report.verdict = Verdict::Undetermined;
    report.note = "best effect-validity violation " + std::to_string(results[winner].f);
  }
  return report;
}

FeasibilityReport decide_numeric(std::span<const Observable> parents, const FeasibilityOptions& opts) {
  check_problem(parents, opts.tol);
  const AffineSystem sys = build_affine(parents);
  const auto restarts = static_cast<std::size_t>(std::max(1, opts.restarts));
  std::vector<RestartOutcome> outcomes(restarts);
  kernels::for_each_index(opts.exec, restarts, [&](std::size_t r) { outcomes[r] = run_alternating(sys, r, opts); });
  std::size_t winner = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (outcomes[r].residual < outcomes[winner].residual) winner = r;

  FeasibilityReport report;
  report.route = "numeric-alternating";
  report.iterations = outcomes[winner].iterations;
  ProductObservable candidate = cells_to_witness(parents, outcomes[winner].cells);
  report.residual = witness_residual(candidate, parents);
  if (report.residual <= opts.tol) {
    report.verdict = Verdict::Feasible;
    report.witness = std::move(candidate);
  } else {
    report.verdict = Verdict::Undetermined;
    report.note = "alternating projections stalled; best residual " + std::to_string(report.residual);
  }
  return report;
}

FeasibilityReport decide(std::span<const Observable> parents, const FeasibilityOptions& opts) {
  check_problem(parents, opts.tol);
  const std::size_t n = parents.size();

  // (1) Commuting observables with a sharp member in every pair.
  bool commuting_sharp = true;
  for (std::size_t i = 0; i < n && commuting_sharp; ++i)
    for (std::size_t j = i + 1; j < n && commuting_sharp; ++j)
      commuting_sharp = pair_commuting_sharp(parents[i], parents[j]);
  if (commuting_sharp) {
    FeasibilityReport r;
    r.verdict = Verdict::Feasible;
    r.reason = Reason::CommutingSharp;
    r.route = "product";
    r.witness = product_joint_commuting(parents, kCommuteTol).joint;
    r.residual = witness_residual(*r.witness, parents);
    return r;
  }

  // (2) Analytic criteria.
  std::optional<CriterionMatch> match;
  std::string route = "criterion";
  if (n == 2) {
    match = match_pair_criterion(parents[0], parents[1]);
  } else if (n == 3) {
    match = match_triple_criterion(parents[0], parents[1], parents[2]);
  }
  if (!match && n >= 3) {
    // A jointly measurable family has jointly measurable subfamilies.
    for (std::size_t i = 0; i < n && !match; ++i) {
      for (std::size_t j = i + 1; j < n && !match; ++j) {
        auto m = match_pair_criterion(parents[i], parents[j]);
        if (m && !m->value.jm) {
          match = m;
          route = "pair-implication";
        }
      }
    }
  }
  if (match) {
    FeasibilityReport r = analytic_report(*match, route);
    if (r.verdict == Verdict::Feasible) {
      const FeasibilityReport numeric =
          n == 2 ? decide_pair_qubit_numeric(parents[0], parents[1], opts) : decide_numeric(parents, opts);
      r.iterations = numeric.iterations;
      r.residual = numeric.residual;
      if (numeric.verdict == Verdict::Feasible) {
        r.witness = numeric.witness;
      } else {
        r.note = "criterion holds; numerical witness search did not converge";
      }
    }
    return r;
  }

  if (n == 2 && parents[0].size() == 2 && parents[1].size() == 2) {
    if (auto g = trivial_joint_any_labeling(parents[0], parents[1])) {
      FeasibilityReport r;
      r.verdict = Verdict::Feasible;
      r.reason = Reason::TrivialJoint;
      r.route = "trivial-joint";
      r.residual = witness_residual(*g, parents);
      r.witness = std::move(g);
      return r;
    }
  }

  // (3) Numerical search.
  if (n == 2 && is_qubit_simple(parents[0]) && is_qubit_simple(parents[1])) {
    FeasibilityReport r = decide_pair_qubit_numeric(parents[0], parents[1], opts);
    if (r.verdict == Verdict::Feasible) return r;
  }
  return decide_numeric(parents, opts);
}

FeasibilityReport decide(const Observable& a, const Observable& b, const FeasibilityOptions& opts) {
  const Observable pair[2] = {a, b};
  return decide(std::span<const Observable>(pair), opts);
}

PairwiseGlobalReport pairwise_vs_global(std::span<const Observable> parents, const FeasibilityOptions& opts) {
  const std::size_t n = parents.size();
  if (n < 3) throw StructureError("pairwise_vs_global needs at least three observables");
  PairwiseGlobalReport out;
  out.pairwise.assign(n, std::vector<std::optional<FeasibilityReport>>(n));
  out.all_pairs_feasible = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.pairwise[i][j] = decide(parents[i], parents[j], opts);
      out.all_pairs_feasible = out.all_pairs_feasible && out.pairwise[i][j]->verdict == Verdict::Feasible;
    }
  }
  out.global = decide(parents, opts);
  std::size_t sharp = 0;
  for (const auto& p : parents) sharp += is_sharp(p, kCommuteTol) ? 1 : 0;
  if (n == 3 && sharp >= 2 && out.all_pairs_feasible && out.global.verdict != Verdict::Feasible) {
    out.global.verdict = Verdict::Feasible;
    out.global.reason = Reason::TwoSharpPairwise;
    out.global.route = "two-sharp-pairwise";
    out.global.note = "pairwise joint measurability with two sharp members implies joint measurability of the triple";
  }
  return out;
}

}  // namespace jm
