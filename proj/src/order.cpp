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

#include "jm/order.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "jm/bloch.hpp"

namespace jm {

namespace {

std::mt19937_64 trial_stream(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x6f726472u};
  return std::mt19937_64(seq);
}

Matrix psd_clip(Matrix m) {
  kernels::clip_psd_inplace(m);
  return m;
}

// Projections onto {D >= floor} and {D <= ceiling}.
// Each returns the magnitude of the removed negative part.
double project_above(Matrix& d, const Matrix& floor) {
  Matrix gap = d - floor;
  const double removed = kernels::clip_psd_inplace(gap);
  d = floor + gap;
  return removed;
}
double project_below(Matrix& d, const Matrix& ceiling) {
  Matrix gap = ceiling - d;
  const double removed = kernels::clip_psd_inplace(gap);
  d = ceiling - gap;
  return removed;
}

struct TopDirection {
  double gap;
  Vector psi;
};

TopDirection top_direction(const Matrix& diff) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (diff + diff.adjoint()));
  const auto last = solver.eigenvalues().size() - 1;
  return {solver.eigenvalues()(last), solver.eigenvectors().col(last)};
}

std::optional<Refutation> check_candidate(const Matrix& d, const HermitianOperator& c, const HermitianOperator& a,
                                          const HermitianOperator& b, const OrderOptions& opts, long trial) {
  const HermitianOperator candidate(d);
  if (!in_lb(candidate, a, b, opts.tol)) return std::nullopt;
  auto top = top_direction(d - c.matrix());
  if (!(top.gap > opts.eps)) return std::nullopt;
  return Refutation{candidate, std::move(top.psi), top.gap, trial};
}

// Qubit effects (gamma I + r u.sigma)/2 with u along the Bloch vectors of
// A, B and A + B.
std::optional<Refutation> directed_qubit_search(const HermitianOperator& c, const HermitianOperator& a,
                                                const HermitianOperator& b, const OrderOptions& opts) {
  const Vec3 va = BlochEffect::from_operator(a).a;
  const Vec3 vb = BlochEffect::from_operator(b).a;
  std::optional<Refutation> best;
  for (const Vec3& dir : {Vec3(va + vb), va, vb}) {
    if (dir.norm() < 1e-12) continue;
    const Vec3 unit = dir.normalized();
    for (int ri = 1; ri <= 100; ++ri) {
      const double r = 0.01 * ri;
      for (int gi = ri; gi <= 200 - ri; ++gi) {
        const double gamma = 0.01 * gi;
        const Vec3 v = r * unit;
        auto r = check_candidate(effect_from_bloch(gamma, v).matrix(), c, a, b, opts, -1);
        if (r && (!best || r->gap > best->gap)) best = std::move(r);
      }
    }
  }
  return best;
}

// (M + shift I)^{-1/2} for PSD M.
Matrix inverse_sqrt_shifted(const Matrix& m, double shift) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd inv = (solver.eigenvalues().array().max(0.0) + shift).rsqrt();
  return solver.eigenvectors() * inv.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

// Largest s in [0, 1] with s * delta <= (A - C) + shift and <= (B - C) + shift,
// given K = ((A - C) + shift)^{-1/2} and likewise for B. By convexity of
// lb(A,B), C + s * delta stays in lb(A,B) whenever C + delta is PSD.
double segment_step(const Matrix& delta, const Matrix& ka, const Matrix& kb) {
  const double la = kernels::max_eigenvalue_raw(ka * delta * ka);
  const double lb = kernels::max_eigenvalue_raw(kb * delta * kb);
  return 1.0 / std::max({1.0, la, lb});
}

Matrix random_effect(int d, std::mt19937_64& rng) {
  Matrix x = psd_clip(random_hermitian(d, rng, 0.5).matrix());
  const double top = kernels::max_eigenvalue_raw(x);
  if (top > 1.0) x /= top;
  return x;
}

}  // namespace

bool in_lb(const HermitianOperator& c, const HermitianOperator& a, const HermitianOperator& b, double tol) {
  return loewner_leq(c, a, tol) && loewner_leq(c, b, tol);
}

std::optional<Refutation> refute_greatest(const HermitianOperator& c, const HermitianOperator& a,
                                          const HermitianOperator& b, const OrderOptions& opts) {
  if (!is_psd(c, opts.tol) || !in_lb(c, a, b, opts.tol)) {
    throw PreconditionError("refute_greatest: candidate is not in lb(A,B)");
  }
  if (c.dim() == 2) {
    if (auto r = directed_qubit_search(c, a, b, opts)) return r;
  }
  const int d = c.dim();
  const double slack = 0.5 * opts.tol;
  const Matrix ka = inverse_sqrt_shifted(a.matrix() - c.matrix(), slack);
  const Matrix kb = inverse_sqrt_shifted(b.matrix() - c.matrix(), slack);
  {
    // Rank-one pushes along eigenvectors of A - C, B - C and their sum.
    std::optional<Refutation> best;
    for (const Matrix& m : {Matrix(a.matrix() - c.matrix()), Matrix(b.matrix() - c.matrix()),
                            Matrix(a.matrix() + b.matrix() - 2.0 * c.matrix())}) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
      for (int k = 0; k < d; ++k) {
        const Vector psi = solver.eigenvectors().col(k);
        const double step = 1.0 / std::max({1.0, (ka * psi).squaredNorm(), (kb * psi).squaredNorm()});
        if (!(step > opts.eps)) continue;
        auto r = check_candidate(c.matrix() + step * psi * psi.adjoint(), c, a, b, opts, -1);
        if (r && (!best || r->gap > best->gap)) best = std::move(r);
      }
    }
    if (best) return best;
  }
  const auto trials = static_cast<std::size_t>(std::max(0, opts.trials));
  std::vector<std::optional<Refutation>> found(trials);
  kernels::for_each_index(opts.exec, trials, [&](std::size_t t) {
    auto rng = trial_stream(opts.seed, t);
    std::normal_distribution<double> normal;
    Vector psi(d);
    for (int i = 0; i < d; ++i) psi(i) = Complex(normal(rng), normal(rng));
    psi.normalize();
    double step = 0.0;
    Matrix delta;
    if (t % 4 == 0) {
      // Rank-one push C + s psi psi^*: the constraints reduce to ||K psi||^2.
      step = 1.0 / std::max({1.0, (ka * psi).squaredNorm(), (kb * psi).squaredNorm()});
      if (!(step > opts.eps)) return;
      delta = psi * psi.adjoint();
    } else {
      Matrix target = random_effect(d, rng);
      if (t % 4 == 2) {
        for (int sweep = 0; sweep < opts.projection_sweeps; ++sweep) {
          const double removed = std::max(
              {project_below(target, a.matrix()), project_below(target, b.matrix()), kernels::clip_psd_inplace(target)});
          if (removed <= 0.1 * opts.tol) break;
        }
      } else if (t % 4 == 3) {
        target = c.matrix() + target;
      }
      delta = target - c.matrix();
      step = segment_step(delta, ka, kb);
      if (!(step * kernels::max_eigenvalue_raw(delta) > opts.eps)) return;
    }
    found[t] = check_candidate(c.matrix() + step * delta, c, a, b, opts, static_cast<long>(t));
  });
  for (auto& f : found)
    if (f) return std::move(f);
  return std::nullopt;
}

MaximalityReport maximality_probe(const HermitianOperator& c, const HermitianOperator& a, const HermitianOperator& b,
                                  const OrderOptions& opts) {
  if (!is_psd(c, opts.tol) || !in_lb(c, a, b, opts.tol)) {
    throw PreconditionError("maximality_probe: candidate is not in lb(A,B)");
  }
  const int d = c.dim();
  MaximalityReport report;
  report.eps = opts.eps;
  const double base = c.trace();
  double lo = base;
  double hi = std::min(a.trace(), b.trace());
  Matrix best = c.matrix();

  const auto verify = [&](const Matrix& m) {
    const HermitianOperator cand(m);
    return in_lb(cand, a, b, opts.tol) && loewner_leq(c, cand, opts.tol);
  };

  const int sweeps = std::max(opts.projection_sweeps, 1) * 5;
  while (hi - lo > opts.bisection_tol) {
    const double target = 0.5 * (lo + hi);
    Matrix cur = best;
    bool reached = false;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      const double deficit = target - cur.trace().real();
      if (deficit > 0) cur += Matrix::Identity(d, d) * (deficit / d);
      project_above(cur, c.matrix());
      project_below(cur, a.matrix());
      project_below(cur, b.matrix());
      if (sweep % 5 == 4 && cur.trace().real() >= target - 0.25 * opts.bisection_tol && verify(cur)) {
        reached = true;
        break;
      }
    }
    if (reached) {
      best = cur;
      lo = std::max(target, cur.trace().real());
    } else {
      hi = target;
    }
  }
  report.trace_gain = best.trace().real() - base;
  if (report.trace_gain > opts.eps) {
    report.verdict = Maximality::NotMaximal;
    report.witness = HermitianOperator(best);
  }
  return report;
}

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::Yes: return "yes";
    case Tristate::No: return "no";
    case Tristate::Unknown: return "unknown";
  }
  return "unknown";
}

OrderAudit joint_observable_order_audit(const ProductObservable& g, const Observable& a, const Observable& b,
                                        const OrderOptions& opts) {
  if (g.arity() != 2) throw StructureError("order audit needs a two-parent joint observable");
  const Observable parents[2] = {a, b};
  const double mismatch = marginal_residual(g, parents);
  if (mismatch > 1e-8) {
    throw PreconditionError("order audit: G is not a joint observable of A and B (marginal residual " +
                            std::to_string(mismatch) + ")");
  }
  OrderAudit audit;
  audit.commuting_sharp = commute(a, b, opts.tol) && (is_sharp(a, opts.tol) || is_sharp(b, opts.tol));
  const bool simple = a.size() == 2 && b.size() == 2;
  const auto id = HermitianOperator::identity(g.dim());
  bool any_refuted = false;
  bool any_alternative = false;
  audit.all_maximal = true;
  for (std::size_t i = 0; i < g.parents()[0].size(); ++i) {
    for (std::size_t j = 0; j < g.parents()[1].size(); ++j) {
      CellAudit cell;
      cell.a_outcome = g.parents()[0][i];
      cell.b_outcome = g.parents()[1][j];
      const HermitianOperator& gij = g.cell(i, j);
      const HermitianOperator& ai = a.effect(cell.a_outcome);
      const HermitianOperator& bj = b.effect(cell.b_outcome);
      cell.in_lb = in_lb(gij, ai, bj, std::max(opts.tol, 1e-8));
      if (cell.in_lb) {
        OrderOptions cell_opts = opts;
        cell_opts.seed = opts.seed + 1000003ULL * (i * g.parents()[1].size() + j);
        cell.refutation = refute_greatest(gij, ai, bj, cell_opts);
        cell.maximality = maximality_probe(gij, ai, bj, cell_opts);
      }
      any_refuted = any_refuted || cell.refutation.has_value();
      if (cell.maximality.verdict == Maximality::NotMaximal) {
        audit.all_maximal = false;
        if (simple) {
          const HermitianOperator& dom = *cell.maximality.witness;
          const std::size_t i2 = 1 - i, j2 = 1 - j;
          std::vector<HermitianOperator> cells(4, HermitianOperator::zero(g.dim()));
          cells[i * 2 + j] = dom;
          cells[i * 2 + j2] = ai - dom;
          cells[i2 * 2 + j] = bj - dom;
          cells[i2 * 2 + j2] = id + dom - ai - bj;
          ProductObservable alt(g.parents(), std::move(cells));
          if (validate(alt.observable(), 1e-8).passed && !joint_agreement(alt, g, opts.eps)) {
            cell.alternative_joint = std::move(alt);
            any_alternative = true;
          }
        }
      }
      audit.cells.push_back(std::move(cell));
    }
  }
  if (any_refuted) {
    audit.all_greatest = Tristate::No;
  } else if (audit.commuting_sharp) {
    audit.all_greatest = Tristate::Yes;
  }
  if (any_alternative) {
    audit.unique = Tristate::No;
  } else if (audit.all_greatest == Tristate::Yes) {
    audit.unique = Tristate::Yes;
  }
  return audit;
}

}  // namespace jm
