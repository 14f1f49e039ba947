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

// Independent reference computations used as test oracles. Nothing here
// calls the library's eigensolver paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Eigenvalues of a 2x2 Hermitian matrix from its characteristic polynomial.
inline std::pair<double, double> eig2(const CMatrix& m) {
  const double tr = (m(0, 0) + m(1, 1)).real();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  return {tr / 2 - disc, tr / 2 + disc};
}

/// Eigenvalues (ascending) of a Hermitian matrix via cyclic Jacobi rotations
/// on the real symmetric embedding [[Re, -Im], [Im, Re]]; every eigenvalue
/// appears twice there, so every other one is kept.
inline std::vector<double> eigenvalues(const CMatrix& h) {
  const int n = static_cast<int>(h.rows());
  const int m = 2 * n;
  std::vector<double> a(m * m);
  auto at = [&](int r, int c) -> double& { return a[r * m + c]; };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Complex z = 0.5 * (h(r, c) + std::conj(h(c, r)));
      at(r, c) = z.real();
      at(r, c + n) = -z.imag();
      at(r + n, c) = z.imag();
      at(r + n, c + n) = z.real();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off += at(p, q) * at(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> all(m);
  for (int k = 0; k < m; ++k) all[k] = at(k, k);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (int k = 0; k < m; k += 2) out.push_back(all[k]);
  return out;
}

inline double min_eig(const CMatrix& h) { return eigenvalues(h).front(); }
inline double max_eig(const CMatrix& h) { return eigenvalues(h).back(); }
inline bool psd(const CMatrix& h, double tol) { return min_eig(h) >= -tol; }
inline bool leq(const CMatrix& a, const CMatrix& b, double tol) { return psd(b - a, tol); }

inline CMatrix sx() { CMatrix m(2, 2); m << 0, 1, 1, 0; return m; }
inline CMatrix sy() { CMatrix m(2, 2); m << 0, Complex(0, -1), Complex(0, 1), 0; return m; }
inline CMatrix sz() { CMatrix m(2, 2); m << 1, 0, 0, -1; return m; }
inline CMatrix id2() { return CMatrix::Identity(2, 2); }

/// (alpha I + a.sigma) / 2 assembled from the Pauli matrices.
inline CMatrix bloch(double alpha, double x, double y, double z) {
  return 0.5 * (alpha * id2() + x * sx() + y * sy() + z * sz());
}

inline double op_norm(const CMatrix& m) {
  const auto ev = eigenvalues(0.5 * (m + m.adjoint()));
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace oracle
