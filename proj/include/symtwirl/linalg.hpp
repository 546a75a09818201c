// Copyright 2026 The symtwirl Authors
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

/**
 * @file
 * Dense complex matrix kernel. Thin value types over Eigen matrices that
 * enforce the Hermitian / density-matrix invariants at construction, plus
 * the handful of spectral and statistical operations everything else is
 * built from.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "symtwirl/errors.hpp"
#include "symtwirl/rng.hpp"

namespace symtwirl {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline double max_norm(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

inline double max_norm(const RealMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

/// Absolute tolerance for operators of max-norm <= 1, relative above that.
inline double scaled_tol(double tolerance, const Matrix& a) { return tolerance * std::max(1.0, max_norm(a)); }

inline bool all_finite(const Matrix& a) { return a.allFinite(); }

inline void require_same_dim(Index a, Index b, const char* where) {
  if (a != b) {
    throw Error(ErrorKind::DimMismatch,
                std::string(where) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

inline void require_square_finite(const Matrix& m, const char* where) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::InvalidMatrix, std::string(where) + ": matrix must be square and non-empty");
  }
  if (!all_finite(m)) {
    throw Error(ErrorKind::InvalidMatrix, std::string(where) + ": non-finite entries");
  }
}

class HermitianOperator {
 public:
  /// Validates ‖A − A†‖_max within tolerance, then stores the exactly
  /// Hermitian part (A + A†)/2.
  explicit HermitianOperator(const Matrix& m, double tolerance = tol::kHermitian) {
    require_square_finite(m, "HermitianOperator");
    const double asym = max_norm(Matrix(m - m.adjoint()));
    if (asym > scaled_tol(tolerance, m)) {
      throw Error(ErrorKind::InvalidMatrix, "HermitianOperator: not Hermitian (deviation " + std::to_string(asym) + ")");
    }
    matrix_ = (m + m.adjoint()) * 0.5;
  }

  static HermitianOperator identity(Index dim) { return HermitianOperator(Matrix::Identity(dim, dim)); }
  static HermitianOperator zero(Index dim) { return HermitianOperator(Matrix::Zero(dim, dim)); }

  const Matrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }

 private:
  Matrix matrix_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, orthonormal
};

/// Hermitian eigendecomposition with deterministic output: eigenvalues
/// ascending, and every eigenvector's largest-magnitude component (first
/// such index) rotated to be real and positive.
inline EigenDecomposition eig_hermitian(const Matrix& a) {
  require_square_finite(a, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  EigenDecomposition out;
  if (solver.info() == Eigen::Success) {
    out = {solver.eigenvalues(), solver.eigenvectors()};
  } else {
    // The tridiagonal QR step can stall on heavily degenerate spectra.
    // Retry in a fixed pseudo-random orthonormal frame.
    bool solved = false;
    for (std::uint64_t attempt = 0; attempt < 3 && !solved; ++attempt) {
      Rng rng(0x9E1A'F00DULL + attempt);
      Matrix g(a.rows(), a.cols());
      for (Index j = 0; j < g.cols(); ++j) {
        for (Index i = 0; i < g.rows(); ++i) g(i, j) = complex(rng.normal(), rng.normal());
      }
      const Matrix u = Eigen::HouseholderQR<Matrix>(g).householderQ();
      Matrix rotated = u.adjoint() * a * u;
      rotated = (0.5 * (rotated + rotated.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<Matrix> retry(rotated);
      if (retry.info() == Eigen::Success) {
        out = {retry.eigenvalues(), u * retry.eigenvectors()};
        solved = true;
      }
    }
    if (!solved) throw Error(ErrorKind::InvalidMatrix, "eig_hermitian: solver failed");
  }
  for (Index c = 0; c < out.eigenvectors.cols(); ++c) {
    auto col = out.eigenvectors.col(c);
    const double peak = col.cwiseAbs().maxCoeff();
    Index pivot = 0;
    while (std::abs(col(pivot)) < peak - 1e-12) ++pivot;
    const complex z = col(pivot);
    col *= std::conj(z) / std::abs(z);
  }
  return out;
}

inline EigenDecomposition eig_hermitian(const HermitianOperator& a) { return eig_hermitian(a.matrix()); }

class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m) {
    require_square_finite(m, "DensityMatrix");
    const double asym = max_norm(Matrix(m - m.adjoint()));
    if (asym > tol::kHermitian) {
      throw Error(ErrorKind::InvalidMatrix, "DensityMatrix: not Hermitian");
    }
    matrix_ = (m + m.adjoint()) * 0.5;
    const double trace = matrix_.trace().real();
    if (std::abs(trace - 1.0) > tol::kTrace) {
      throw Error(ErrorKind::InvalidMatrix, "DensityMatrix: trace " + std::to_string(trace) + " != 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues()(0) < -tol::kPsd) {
      throw Error(ErrorKind::InvalidMatrix,
                  "DensityMatrix: negative eigenvalue " + std::to_string(solver.eigenvalues()(0)));
    }
  }

  static DensityMatrix maximally_mixed(Index dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  /// |ψ⟩⟨ψ| of a state vector normalized here.
  static DensityMatrix pure(const Vector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw Error(ErrorKind::InvalidMatrix, "DensityMatrix::pure: zero vector");
    const Vector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
  }

  const Matrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }

 private:
  Matrix matrix_;
};

inline HermitianOperator jordan_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "jordan_product");
  return HermitianOperator((a.matrix() * b.matrix() + b.matrix() * a.matrix()) * 0.5);
}

/// tr(AB) without forming the product.
inline complex trace_product(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

inline double expectation(const DensityMatrix& rho, const HermitianOperator& o) {
  require_same_dim(rho.dim(), o.dim(), "expectation");
  const complex value = trace_product(rho.matrix(), o.matrix());
  const double bound = tol::kImagResidue * std::max(1.0, static_cast<double>(o.dim()) * max_norm(o.matrix()));
  if (std::abs(value.imag()) > bound) {
    throw Error(ErrorKind::InvalidMatrix, "expectation: imaginary residue " + std::to_string(value.imag()));
  }
  return value.real();
}

inline double variance(const DensityMatrix& rho, const HermitianOperator& o) {
  require_same_dim(rho.dim(), o.dim(), "variance");
  const Matrix square = o.matrix() * o.matrix();
  const double second = trace_product(rho.matrix(), square).real();
  const double first = expectation(rho, o);
  const double value = second - first * first;
  if (value < -tol::kVarianceFloor * std::max(1.0, std::abs(second))) {
    throw Error(ErrorKind::InvalidMatrix, "variance: negative variance " + std::to_string(value));
  }
  return std::max(0.0, value);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline bool is_unitary(const Matrix& u, double tolerance = tol::kUnitary) {
  if (u.rows() != u.cols()) return false;
  return max_norm(Matrix(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()))) <= tolerance;
}

/// Moore-Penrose inverse of a real symmetric matrix; eigenvalues with
/// magnitude below rel_tol·max|λ| are treated as zero.
inline RealMatrix pinv_symmetric(const RealMatrix& m, double rel_tol = 1e-12) {
  if (m.size() == 0) return m;
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver((m + m.transpose()) * 0.5);
  const RealVector& values = solver.eigenvalues();
  const double cut = rel_tol * std::max(1e-300, values.cwiseAbs().maxCoeff());
  RealVector inverted = values;
  for (Index i = 0; i < values.size(); ++i) inverted(i) = std::abs(values(i)) > cut ? 1.0 / values(i) : 0.0;
  return solver.eigenvectors() * inverted.asDiagonal() * solver.eigenvectors().transpose();
}

/// GUE-style random Hermitian: (G + G†)/2 with standard complex normal G.
inline Matrix random_hermitian(Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = complex(rng.normal(), rng.normal());
  }
  return (g + g.adjoint()) * 0.5;
}

/// Complex Gaussian (Ginibre) matrix.
inline Matrix random_ginibre(Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = complex(rng.normal(), rng.normal());
  }
  return g;
}

}  // namespace symtwirl
