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

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "jm/errors.hpp"

namespace jm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxDim = 64;
inline constexpr double kDefaultPsdTol = 1e-9;
inline constexpr double kHermiticityRejectTol = 1e-8;

/// Dense finite-dimensional Hermitian matrix. Construction symmetrizes the
/// input to (M + M*)/2 and rejects inputs whose anti-Hermitian part exceeds
/// kHermiticityRejectTol in max-entry norm.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);
  static HermitianOperator scalar(int dim, double value);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  /// Max-entry norm of the anti-Hermitian part removed at construction.
  double asymmetry() const { return asymmetry_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  double trace() const { return m_.trace().real(); }

  HermitianOperator& operator+=(const HermitianOperator& other);
  HermitianOperator& operator-=(const HermitianOperator& other);
  HermitianOperator& operator*=(double s);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
  HermitianOperator operator-() const { return *this * -1.0; }

 private:
  struct Trusted {};
  HermitianOperator(Trusted, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
  double asymmetry_ = 0.0;
};

/// Density operator: PSD with unit trace.
class State {
 public:
  explicit State(HermitianOperator rho, double tol = kDefaultPsdTol);
  const HermitianOperator& op() const { return rho_; }
  int dim() const { return rho_.dim(); }

 private:
  HermitianOperator rho_;
};

struct Spectrum {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns are eigenvectors
};

/// Full eigendecomposition. Throws NumericalError on non-convergence.
Spectrum spectrum(const HermitianOperator& h);

double min_eigenvalue(const HermitianOperator& h);
double max_eigenvalue(const HermitianOperator& h);
/// Largest eigenvector residual max_k ||H v_k - l_k v_k||.
double eigen_residual(const HermitianOperator& h);

bool is_psd(const HermitianOperator& h, double tol = kDefaultPsdTol);
bool is_effect(const HermitianOperator& e, double tol = kDefaultPsdTol);
bool loewner_leq(const HermitianOperator& a, const HermitianOperator& b, double tol = kDefaultPsdTol);

double outcome_probability(const HermitianOperator& effect, const State& rho, double tol = kDefaultPsdTol);

/// Spectral norm of a Hermitian operator (largest |eigenvalue|).
double operator_norm(const HermitianOperator& h);
/// Spectral norm of an arbitrary square matrix (largest singular value).
double spectral_norm(const Matrix& m);
double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

/// Euclidean-Jordan product (AB + BA)/2.
HermitianOperator jordan_product(const HermitianOperator& a, const HermitianOperator& b);

/// Nearest PSD operator in Frobenius norm (negative eigenvalues clipped).
HermitianOperator psd_part(const HermitianOperator& h);

// Pauli matrices.
const HermitianOperator& pauli_x();
const HermitianOperator& pauli_y();
const HermitianOperator& pauli_z();

/// Haar-random unitary via QR of a complex Ginibre matrix.
Matrix random_unitary(int dim, std::mt19937_64& rng);
HermitianOperator random_hermitian(int dim, std::mt19937_64& rng, double scale = 1.0);
HermitianOperator conjugate(const HermitianOperator& h, const Matrix& u);

}  // namespace jm
