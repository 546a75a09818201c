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

// Shared generators and independent reference implementations for tests.

#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "symtwirl/symtwirl.hpp"

namespace symtwirl::testing {

#define EXPECT_THROW_KIND(stmt, expected_kind)                                  \
  do {                                                                          \
    try {                                                                       \
      stmt;                                                                     \
      ADD_FAILURE() << "expected " << to_string(expected_kind) << ", no throw"; \
    } catch (const ::symtwirl::Error& e) {                                      \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                           \
    }                                                                           \
  } while (0)

/// Largest entrywise |a − b|; zero for empty operands.
template <typename A, typename B>
double diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  return (a.eval() - b.eval()).cwiseAbs().maxCoeff();
}

inline Matrix op(char letter) {
  switch (letter) {
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: return pauli_i();
  }
}

/// Kronecker product of letters, first letter = most significant factor.
inline Matrix letters_matrix(const std::string& letters) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : letters) out = kron(out, op(c));
  return out;
}

inline PauliString random_pauli(int n, Rng& rng) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return PauliString(n, rng.next() & mask, rng.next() & mask);
}

inline DensityMatrix random_density(Index dim, Rng& rng) {
  const Matrix g = random_ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline Matrix random_qubit_hermitian(Rng& rng) {
  return rng.normal() * pauli_i() + rng.normal() * pauli_x() + rng.normal() * pauli_y() + rng.normal() * pauli_z();
}

inline Matrix random_unitary(Index dim, Rng& rng) {
  return Eigen::HouseholderQR<Matrix>(random_ginibre(dim, rng)).householderQ();
}

/// Group average with explicit dense element matrices.
inline Matrix twirl_by_elements(const Matrix& x, const GroupRep& rep) {
  Matrix sum = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t g = 0; g < rep.order(); ++g) {
    const Matrix u = rep.element(g);
    sum += u * x * u.adjoint();
  }
  return sum / static_cast<double>(rep.order());
}

/// Average of U_g ρ U_g† for a random ρ: a random symmetric state.
inline DensityMatrix random_symmetric_density(const GroupRep& rep, Rng& rng) {
  const DensityMatrix base = random_density(rep.dim(), rng);
  Matrix avg = Matrix::Zero(rep.dim(), rep.dim());
  for (std::size_t g = 0; g < rep.order(); ++g) avg += rep.conjugate(g, base.matrix());
  avg /= static_cast<double>(rep.order());
  return DensityMatrix(0.5 * (avg + avg.adjoint()));
}

/// Pascal-triangle binomial, independent of the multiplicative formula.
inline std::uint64_t pascal(int n, int m) {
  std::vector<std::vector<std::uint64_t>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) {
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          t[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] + t[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
    }
  }
  if (m < 0 || m > n) return 0;
  return t[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
}

}  // namespace symtwirl::testing
