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
 * Group twirling T(X) = |G|⁻¹ Σ_g U_g X U_g†.
 *
 * twirl_dense is the brute-force group average and the reference for the two
 * closed-form paths: the Fourier diagonal of a twirled product observable
 * under cyclic translation, and the type-class form of a Pauli string
 * twirled over qubit permutations.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "symtwirl/groups.hpp"
#include "symtwirl/linalg.hpp"

namespace symtwirl {

/// Work budget for twirl_dense, in multiply-adds. Monomial representations
/// cost |G|·dim² (index remapping), explicit ones |G|·dim³.
inline constexpr double kTwirlWorkLimit = 1e10;
inline constexpr int kMaxTranslationProductQubits = 20;
inline constexpr int kMaxSymPauliDenseQubits = 10;

struct TwirlOptions {
  bool unsafe_size = false;  // skip the work guard (CLI --unsafe-size only)
};

inline double twirl_work(const GroupRep& rep) {
  const auto d = static_cast<double>(rep.dim());
  const auto g = static_cast<double>(rep.order());
  return rep.is_monomial() ? g * d * d : g * d * d * d;
}

/// Brute-force group average. Summation runs over elements in index order.
inline HermitianOperator twirl_dense(const HermitianOperator& x, const GroupRep& rep, TwirlOptions options = {}) {
  require_same_dim(x.dim(), rep.dim(), "twirl_dense");
  if (!options.unsafe_size && twirl_work(rep) > kTwirlWorkLimit) {
    throw Error(ErrorKind::TooLarge, "twirl_dense: |G|·cost = " + std::to_string(twirl_work(rep)) + " exceeds guard");
  }
  const Matrix& a = x.matrix();
  Matrix sum = Matrix::Zero(a.rows(), a.cols());
  if (rep.is_monomial()) {
    const Index dim = a.rows();
    for (std::size_t g = 0; g < rep.order(); ++g) {
      const auto image = rep.basis_image(g);
      for (Index b = 0; b < dim; ++b) {
        const auto ib = static_cast<Index>(image[static_cast<std::size_t>(b)]);
        for (Index r = 0; r < dim; ++r) sum(static_cast<Index>(image[static_cast<std::size_t>(r)]), ib) += a(r, b);
      }
    }
  } else {
    for (std::size_t g = 0; g < rep.order(); ++g) sum += rep.conjugate(g, a);
  }
  sum /= static_cast<double>(rep.order());
  return HermitianOperator(sum);
}

// ---------------------------------------------------------------------------
// Translation: Fourier diagonal of a product observable
// ---------------------------------------------------------------------------

/// Y = Σ_j diag[j] |f_j⟩⟨f_j|.
struct FourierDiagonal {
  int n = 0;
  RealVector diag;

  Matrix to_dense() const {
    const Matrix f = fourier_basis(n);
    return f * diag.cast<complex>().asDiagonal() * f.adjoint();
  }
};

/// The twirl of ⊗_l A_l over cyclic translation, read off the product form
/// of the Fourier basis: factor l (qubit l, most significant first) of
/// |f_j⟩ is (|0⟩ + e^{iφ}|1⟩)/√2 with φ = 2π·(j mod 2^{l+1})/2^{l+1}, so
/// diag[j] = Π_l [(A_00 + A_11)/2 + Re(A_01 e^{iφ})].
inline FourierDiagonal twirl_translation_product(int n, std::span<const Matrix> factors) {
  require_qubits(n, kMaxTranslationProductQubits, "twirl_translation_product");
  if (factors.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::InvalidFactor, "twirl_translation_product: expected one factor per qubit");
  }
  for (const auto& a : factors) {
    if (a.rows() != 2 || a.cols() != 2 || !a.allFinite() || max_norm(Matrix(a - a.adjoint())) > tol::kHermitian) {
      throw Error(ErrorKind::InvalidFactor, "twirl_translation_product: factor is not a 2x2 Hermitian matrix");
    }
  }
  const std::size_t dim = std::size_t{1} << n;
  FourierDiagonal out{n, RealVector::Ones(static_cast<Index>(dim))};
  for (int l = 0; l < n; ++l) {
    const Matrix& a = factors[static_cast<std::size_t>(l)];
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const complex off = a(0, 1);
    const std::size_t period = std::size_t{1} << (l + 1);
    std::vector<double> value(period);
    for (std::size_t r = 0; r < period; ++r) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(period);
      value[r] = mean + (off * std::polar(1.0, phi)).real();
    }
    for (std::size_t j = 0; j < dim; ++j) out.diag(static_cast<Index>(j)) *= value[j & (period - 1)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Permutation: Pauli type classes
// ---------------------------------------------------------------------------

enum class PauliLetter : int { I = 0, X = 1, Y = 2, Z = 3 };

/// T(X_kl) over S_n. Represents phase × (uniform average over every
/// arrangement of the letters with the given counts), where each
/// arrangement is the unphased product ⊗ σx^{k_q}σz^{l_q}. The phase is
/// i^{k·l} = i^{t_Y}.
struct SymmetrizedPauli {
  int n = 0;
  std::array<int, 4> type_counts{};  // t_I, t_X, t_Y, t_Z
  int phase_power = 0;               // phase = i^phase_power, in {0,1,2,3}

  complex phase() const { return i_power(phase_power); }
  int count(PauliLetter letter) const { return type_counts[static_cast<std::size_t>(letter)]; }
  int x_weight() const { return count(PauliLetter::X) + count(PauliLetter::Y); }
  int z_weight() const { return count(PauliLetter::Z) + count(PauliLetter::Y); }

  /// Number of distinct strings in the class, n!/(t_I! t_X! t_Y! t_Z!).
  double class_size() const {
    double out = std::lgamma(n + 1.0);
    for (int c : type_counts) out -= std::lgamma(c + 1.0);
    return std::round(std::exp(out));
  }

  friend bool operator==(const SymmetrizedPauli&, const SymmetrizedPauli&) = default;
};

inline SymmetrizedPauli twirl_sn_pauli(const PauliString& p) {
  SymmetrizedPauli out;
  out.n = p.qubits();
  for (int q = 0; q < p.qubits(); ++q) {
    const int letter = (p.k(q) ? 1 : 0) + (p.l(q) ? (p.k(q) ? 1 : 3) : 0);
    ++out.type_counts[static_cast<std::size_t>(letter)];
  }
  out.phase_power = p.kl_dot() % 4;
  return out;
}

/// Dense materialization of a SymmetrizedPauli by enumerating its class.
inline HermitianOperator sym_pauli_dense(const SymmetrizedPauli& s) {
  if (s.n > kMaxSymPauliDenseQubits) {
    throw Error(ErrorKind::TooLarge, "sym_pauli_dense: n = " + std::to_string(s.n) + " exceeds " +
                                         std::to_string(kMaxSymPauliDenseQubits));
  }
  if (s.n < 1) throw Error(ErrorKind::UnsupportedSize, "sym_pauli_dense: n must be positive");
  int total = 0;
  for (int c : s.type_counts) {
    if (c < 0) throw Error(ErrorKind::InvalidArgument, "sym_pauli_dense: negative type count");
    total += c;
  }
  if (total != s.n) throw Error(ErrorKind::InvalidArgument, "sym_pauli_dense: type counts do not sum to n");

  std::vector<int> letters;
  for (int letter = 0; letter < 4; ++letter) letters.insert(letters.end(), static_cast<std::size_t>(s.type_counts[static_cast<std::size_t>(letter)]), letter);

  const Index dim = Index{1} << s.n;
  Matrix sum = Matrix::Zero(dim, dim);
  std::size_t members = 0;
  do {
    std::uint64_t k_index = 0;
    std::uint64_t l_index = 0;
    for (int q = 0; q < s.n; ++q) {
      const int letter = letters[static_cast<std::size_t>(q)];
      const std::uint64_t bit = std::uint64_t{1} << (s.n - 1 - q);
      if (letter == 1 || letter == 2) k_index |= bit;
      if (letter == 2 || letter == 3) l_index |= bit;
    }
    accumulate_xz_string(sum, k_index, l_index, complex(1.0, 0.0));
    ++members;
  } while (std::next_permutation(letters.begin(), letters.end()));
  sum *= s.phase() / static_cast<double>(members);
  return HermitianOperator(sum);
}

}  // namespace symtwirl
