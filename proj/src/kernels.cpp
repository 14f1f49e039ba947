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

#include "jm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <vector>

#include <omp.h>

namespace jm::kernels {

void for_each_index(Exec exec, std::size_t n, const std::function<void(std::size_t)>& body) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double clip_psd_inplace(Matrix& m) {
  if (m.rows() == 2) {
    // Bloch form: m = (t I + v.sigma), eigenvalues t +- |v|.
    const double t = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double vz = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const Complex off = 0.5 * (m(1, 0) + std::conj(m(0, 1)));  // vx + i vy
    const double r = std::hypot(vz, std::abs(off));
    const double lo = t - r;
    if (lo >= 0.0) return 0.0;
    const double hi = t + r;
    if (hi <= 0.0) {
      m.setZero();
      return -lo;
    }
    // Keep only the positive branch: (hi/2)(I + v_hat.sigma).
    const double s = 0.5 * hi / r;
    m(0, 0) = Complex(s * (r + vz), 0.0);
    m(1, 1) = Complex(s * (r - vz), 0.0);
    m(1, 0) = s * off;
    m(0, 1) = std::conj(m(1, 0));
    return -lo;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  const Eigen::VectorXd& w = solver.eigenvalues();
  if (w(0) >= 0.0) return 0.0;
  const Matrix& v = solver.eigenvectors();
  m = v * w.cwiseMax(0.0).cast<Complex>().asDiagonal() * v.adjoint();
  return -w(0);
}

double clip_psd_batch(std::span<Matrix> cells, Exec exec) {
  std::vector<double> removed(cells.size(), 0.0);
  for_each_index(exec, cells.size(), [&](std::size_t i) { removed[i] = clip_psd_inplace(cells[i]); });
  double worst = 0.0;
  for (double r : removed) worst = std::max(worst, r);
  return worst;
}

double min_eigenvalue_raw(const Matrix& m) {
  if (m.rows() == 2) {
    const double t = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double d = 0.5 * (m(0, 0).real() - m(1, 1).real());
    return t - std::hypot(d, std::abs(m(1, 0)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_eigenvalue_raw(const Matrix& m) { return -min_eigenvalue_raw(-m); }

int max_threads() { return omp_get_max_threads(); }

}  // namespace jm::kernels
