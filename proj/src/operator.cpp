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

#include "jm/operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jm {

namespace {

void check_dim(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) {
    throw StructureError("operator must be square, got " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (rows < 1 || rows > kMaxDim) {
    throw StructureError("operator dimension " + std::to_string(rows) + " outside [1, " + std::to_string(kMaxDim) +
                         "]");
  }
}

void check_same_dim(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    throw StructureError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& m) {
  check_dim(m.rows(), m.cols());
  Matrix anti = 0.5 * (m - m.adjoint());
  asymmetry_ = anti.cwiseAbs().maxCoeff();
  if (!(asymmetry_ <= kHermiticityRejectTol)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: asymmetry " << asymmetry_ << " exceeds " << kHermiticityRejectTol;
    throw StructureError(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(int dim) {
  check_dim(dim, dim);
  return HermitianOperator(Trusted{}, Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
  check_dim(dim, dim);
  return HermitianOperator(Trusted{}, Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::scalar(int dim, double value) {
  check_dim(dim, dim);
  return HermitianOperator(Trusted{}, Matrix::Identity(dim, dim) * value);
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  check_same_dim(*this, other);
  m_ += other.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& other) {
  check_same_dim(*this, other);
  m_ -= other.m_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
  m_ *= s;
  return *this;
}

State::State(HermitianOperator rho, double tol) : rho_(std::move(rho)) {
  if (!is_psd(rho_, tol)) {
    throw PreconditionError("state is not positive semidefinite (min eigenvalue " +
                            std::to_string(min_eigenvalue(rho_)) + ")");
  }
  if (std::abs(rho_.trace() - 1.0) > 1e-12) {
    throw PreconditionError("state trace " + std::to_string(rho_.trace()) + " is not 1");
  }
}

Spectrum spectrum(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    double residual = (h.matrix() * solver.eigenvectors() -
                       solver.eigenvectors() * solver.eigenvalues().cast<Complex>().asDiagonal())
                          .norm();
    throw NumericalError("Hermitian eigensolver did not converge (residual " + std::to_string(residual) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianOperator& h) {
  if (h.dim() == 2) {
    // Closed form for the qubit case: (t +- sqrt(d^2 + |c|^2)).
    const double t = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double d = 0.5 * (h(0, 0).real() - h(1, 1).real());
    return t - std::hypot(d, std::abs(h(0, 1)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    return spectrum(h).values(0);  // rethrows with residual
  }
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const HermitianOperator& h) { return -min_eigenvalue(-h); }

double eigen_residual(const HermitianOperator& h) {
  const Spectrum s = spectrum(h);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    const Vector v = s.vectors.col(k);
    worst = std::max(worst, (h.matrix() * v - s.values(k) * v).norm());
  }
  return worst;
}

bool is_psd(const HermitianOperator& h, double tol) {
  if (tol < 0) throw PreconditionError("tolerance must be nonnegative");
  return min_eigenvalue(h) >= -tol;
}

bool is_effect(const HermitianOperator& e, double tol) {
  return is_psd(e, tol) && is_psd(HermitianOperator::identity(e.dim()) - e, tol);
}

bool loewner_leq(const HermitianOperator& a, const HermitianOperator& b, double tol) {
  check_same_dim(a, b);
  return is_psd(b - a, tol);
}

double outcome_probability(const HermitianOperator& effect, const State& rho, double tol) {
  check_same_dim(effect, rho.op());
  if (!is_effect(effect, tol)) {
    throw PreconditionError("outcome_probability requires an effect (0 <= E <= I)");
  }
  return (rho.op().matrix() * effect.matrix()).trace().real();
}

double operator_norm(const HermitianOperator& h) {
  return std::max(std::abs(min_eigenvalue(h)), std::abs(max_eigenvalue(h)));
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
  check_same_dim(a, b);
  return spectral_norm(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

HermitianOperator jordan_product(const HermitianOperator& a, const HermitianOperator& b) {
  check_same_dim(a, b);
  return HermitianOperator(Matrix(0.5 * (a.matrix() * b.matrix() + b.matrix() * a.matrix())));
}

HermitianOperator psd_part(const HermitianOperator& h) {
  const Spectrum s = spectrum(h);
  const Eigen::VectorXd clipped = s.values.cwiseMax(0.0);
  return HermitianOperator(Matrix(s.vectors * clipped.cast<Complex>().asDiagonal() * s.vectors.adjoint()));
}

const HermitianOperator& pauli_x() {
  static const HermitianOperator x = [] {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianOperator(m);
  }();
  return x;
}

const HermitianOperator& pauli_y() {
  static const HermitianOperator y = [] {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return HermitianOperator(m);
  }();
  return y;
}

const HermitianOperator& pauli_z() {
  static const HermitianOperator z = [] {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianOperator(m);
  }();
  return z;
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0) q.col(k) *= d / mag;
  }
  return q;
}

HermitianOperator random_hermitian(int dim, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return HermitianOperator(Matrix(0.5 * (g + g.adjoint())));
}

HermitianOperator conjugate(const HermitianOperator& h, const Matrix& u) {
  return HermitianOperator(Matrix(u * h.matrix() * u.adjoint()));
}

}  // namespace jm
