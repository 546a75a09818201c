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
 * Finite unitary representations and the states and operators used with
 * them.
 *
 * Qubit convention: qubit 0 (the first letter of a Pauli string, the first
 * tensor factor) is the most significant bit of a computational-basis index.
 */

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symtwirl/linalg.hpp"

namespace symtwirl {

inline constexpr int kMaxDenseQubits = 12;
inline constexpr int kMaxPermutationQubits = 8;

inline Matrix pauli_i() { return Matrix::Identity(2, 2); }

inline Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = complex(0.0, -1.0);
  m(1, 0) = complex(0.0, 1.0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

inline void require_qubits(int n, int max_n, const char* where) {
  if (n < 1 || n > max_n) {
    throw Error(ErrorKind::UnsupportedSize,
                std::string(where) + ": qubit count " + std::to_string(n) + " outside [1, " + std::to_string(max_n) + "]");
  }
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

/// Bijection on {0..n-1}. compose(s, t) is s∘t, i.e. i ↦ s(t(i)).
class Permutation {
 public:
  explicit Permutation(std::vector<int> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
      if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorKind::InvalidArgument, "Permutation: map is not a bijection");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> map(static_cast<std::size_t>(n));
    std::iota(map.begin(), map.end(), 0);
    return Permutation(std::move(map));
  }

  /// rank-th permutation of {0..n-1} in lexicographic order (rank 0 = identity).
  static Permutation from_lex_rank(int n, std::uint64_t rank) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::uint64_t> factorial(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) factorial[static_cast<std::size_t>(i)] = factorial[static_cast<std::size_t>(i) - 1] * static_cast<std::uint64_t>(i);
    if (rank >= factorial[static_cast<std::size_t>(n)]) {
      throw Error(ErrorKind::IndexOutOfRange, "Permutation::from_lex_rank: rank out of range");
    }
    std::vector<int> map;
    map.reserve(static_cast<std::size_t>(n));
    for (int slot = n - 1; slot >= 0; --slot) {
      const std::uint64_t f = factorial[static_cast<std::size_t>(slot)];
      const auto pick = static_cast<std::size_t>(rank / f);
      rank %= f;
      map.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return Permutation(std::move(map));
  }

  int size() const noexcept { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& map() const noexcept { return map_; }

  Permutation inverse() const {
    std::vector<int> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
  }

  friend Permutation compose(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw Error(ErrorKind::DimMismatch, "compose: permutation sizes differ");
    std::vector<int> map(s.map_.size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = s(t(static_cast<int>(i)));
    return Permutation(std::move(map));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

/// Image of each basis index under the register permutation P_s, where
/// P_s|b_0 … b_{n-1}⟩ = |b_{s(0)} … b_{s(n-1)}⟩ (slot i receives the content
/// of slot s(i)).
inline std::vector<std::size_t> permutation_basis_image(const Permutation& s) {
  const int n = s.size();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> image(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t out = 0;
    for (int slot = 0; slot < n; ++slot) {
      const std::size_t bit = (b >> (n - 1 - s(slot))) & 1U;
      out |= bit << (n - 1 - slot);
    }
    image[b] = out;
  }
  return image;
}

inline Matrix permutation_matrix(const std::vector<std::size_t>& image) {
  const auto dim = static_cast<Index>(image.size());
  Matrix u = Matrix::Zero(dim, dim);
  for (Index b = 0; b < dim; ++b) u(static_cast<Index>(image[static_cast<std::size_t>(b)]), b) = 1.0;
  return u;
}

// ---------------------------------------------------------------------------
// GroupRep
// ---------------------------------------------------------------------------

enum class GroupKind { ExplicitList, Translation, Permutation };

/// A finite group represented by unitaries {U_g}; element 0 is the identity
/// and the normalized Haar measure is the uniform weight 1/|G|.
///
/// Translation and permutation representations are monomial (basis
/// permutations) and are materialized lazily: element g is produced on
/// demand as a basis-index map or as a dense matrix. Iteration order is
/// fixed: powers T^g ascending, permutations in lexicographic order.
class GroupRep {
 public:
  static GroupRep explicit_list(std::vector<Matrix> elements) {
    if (elements.empty()) throw Error(ErrorKind::InvalidArgument, "GroupRep: empty element list");
    const Index dim = elements.front().rows();
    for (const auto& u : elements) {
      require_square_finite(u, "GroupRep");
      require_same_dim(u.rows(), dim, "GroupRep");
      if (!is_unitary(u)) throw Error(ErrorKind::InvalidMatrix, "GroupRep: element is not unitary");
    }
    if (max_norm(Matrix(elements.front() - Matrix::Identity(dim, dim))) > tol::kUnitary) {
      throw Error(ErrorKind::InvalidArgument, "GroupRep: element 0 must be the identity");
    }
    GroupRep rep(GroupKind::ExplicitList, dim, elements.size(), 0);
    rep.elements_ = std::move(elements);
    return rep;
  }

  static GroupRep trivial(Index dim) { return explicit_list({Matrix::Identity(dim, dim)}); }

  static GroupRep translation(int n) {
    require_qubits(n, kMaxDenseQubits, "translation_rep");
    const Index dim = Index{1} << n;
    return GroupRep(GroupKind::Translation, dim, static_cast<std::size_t>(dim), n);
  }

  static GroupRep permutation(int n) {
    require_qubits(n, kMaxPermutationQubits, "permutation_rep");
    std::size_t order = 1;
    for (int i = 2; i <= n; ++i) order *= static_cast<std::size_t>(i);
    return GroupRep(GroupKind::Permutation, Index{1} << n, order, n);
  }

  GroupKind kind() const noexcept { return kind_; }
  Index dim() const noexcept { return dim_; }
  std::size_t order() const noexcept { return order_; }
  int qubits() const noexcept { return qubits_; }
  bool is_monomial() const noexcept { return kind_ != GroupKind::ExplicitList; }

  /// For monomial kinds: U_g|b⟩ = |image[b]⟩.
  std::vector<std::size_t> basis_image(std::size_t g) const {
    check_index(g);
    switch (kind_) {
      case GroupKind::Translation: {
        std::vector<std::size_t> image(static_cast<std::size_t>(dim_));
        const auto d = static_cast<std::size_t>(dim_);
        for (std::size_t b = 0; b < d; ++b) image[b] = (b + g) % d;
        return image;
      }
      case GroupKind::Permutation:
        return permutation_basis_image(Permutation::from_lex_rank(qubits_, g));
      case GroupKind::ExplicitList:
        break;
    }
    throw Error(ErrorKind::InvalidArgument, "basis_image: representation is not monomial");
  }

  Permutation qubit_permutation(std::size_t g) const {
    check_index(g);
    if (kind_ != GroupKind::Permutation) {
      throw Error(ErrorKind::InvalidArgument, "qubit_permutation: not a permutation representation");
    }
    return Permutation::from_lex_rank(qubits_, g);
  }

  Matrix element(std::size_t g) const {
    check_index(g);
    if (kind_ == GroupKind::ExplicitList) return elements_[g];
    return permutation_matrix(basis_image(g));
  }

  /// U_g A U_g†.
  Matrix conjugate(std::size_t g, const Matrix& a) const {
    require_same_dim(a.rows(), dim_, "GroupRep::conjugate");
    if (kind_ == GroupKind::ExplicitList) return elements_[g] * a * elements_[g].adjoint();
    return conjugate_by_image(basis_image(g), a);
  }

  /// (U A U†)(image[a], image[b]) = A(a, b).
  static Matrix conjugate_by_image(const std::vector<std::size_t>& image, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (Index b = 0; b < a.cols(); ++b) {
      const auto ib = static_cast<Index>(image[static_cast<std::size_t>(b)]);
      for (Index r = 0; r < a.rows(); ++r) out(static_cast<Index>(image[static_cast<std::size_t>(r)]), ib) = a(r, b);
    }
    return out;
  }

 private:
  GroupRep(GroupKind kind, Index dim, std::size_t order, int qubits)
      : kind_(kind), dim_(dim), order_(order), qubits_(qubits) {}

  void check_index(std::size_t g) const {
    if (g >= order_) throw Error(ErrorKind::IndexOutOfRange, "GroupRep: element index out of range");
  }

  GroupKind kind_;
  Index dim_;
  std::size_t order_;
  int qubits_;
  std::vector<Matrix> elements_;
};

inline GroupRep translation_rep(int n) { return GroupRep::translation(n); }
inline GroupRep permutation_rep(int n) { return GroupRep::permutation(n); }
inline GroupRep z2_qubit_rep() { return GroupRep::explicit_list({pauli_i(), pauli_z()}); }

inline bool verify_symmetry(const DensityMatrix& rho, const GroupRep& rep, double tolerance) {
  require_same_dim(rho.dim(), rep.dim(), "verify_symmetry");
  for (std::size_t g = 1; g < rep.order(); ++g) {
    if (max_norm(Matrix(rep.conjugate(g, rho.matrix()) - rho.matrix())) > tolerance) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PauliString
// ---------------------------------------------------------------------------

/// X_{kl} = i^{k·l} ⊗_q σx^{k_q} σz^{l_q}, stored as bit masks (bit q is
/// qubit q). Text form: one letter per qubit from {I, X, Y, Z}.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString(int n, std::uint64_t k, std::uint64_t l) : n_(n), k_(k), l_(l) {
    if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::UnsupportedSize, "PauliString: qubit count out of range");
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    if ((k & ~mask) != 0 || (l & ~mask) != 0) {
      throw Error(ErrorKind::InvalidArgument, "PauliString: bits set beyond qubit count");
    }
    x_weight_ = std::popcount(k_);
    z_weight_ = std::popcount(l_);
  }

  PauliString(const std::vector<int>& k, const std::vector<int>& l) : PauliString(static_cast<int>(k.size()), pack(k), pack(l)) {
    if (k.size() != l.size()) throw Error(ErrorKind::ShapeMismatch, "PauliString: k and l lengths differ");
  }

  static PauliString parse(std::string_view text) {
    std::uint64_t k = 0;
    std::uint64_t l = 0;
    if (text.empty() || text.size() > kMaxQubits) throw Error(ErrorKind::InvalidArgument, "PauliString: bad length");
    for (std::size_t q = 0; q < text.size(); ++q) {
      const std::uint64_t bit = std::uint64_t{1} << q;
      switch (text[q]) {
        case 'I': break;
        case 'X': k |= bit; break;
        case 'Y': k |= bit; l |= bit; break;
        case 'Z': l |= bit; break;
        default:
          throw Error(ErrorKind::InvalidArgument, "PauliString: unexpected letter '" + std::string(1, text[q]) + "'");
      }
    }
    return PauliString(static_cast<int>(text.size()), k, l);
  }

  std::string to_string() const {
    std::string out(static_cast<std::size_t>(n_), 'I');
    for (int q = 0; q < n_; ++q) {
      const bool x = k(q);
      const bool z = l(q);
      out[static_cast<std::size_t>(q)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return out;
  }

  int qubits() const noexcept { return n_; }
  std::uint64_t k_mask() const noexcept { return k_; }
  std::uint64_t l_mask() const noexcept { return l_; }
  bool k(int q) const noexcept { return ((k_ >> q) & 1U) != 0; }
  bool l(int q) const noexcept { return ((l_ >> q) & 1U) != 0; }
  int x_weight() const noexcept { return x_weight_; }  // |k|
  int z_weight() const noexcept { return z_weight_; }  // |l|
  int kl_dot() const noexcept { return std::popcount(k_ & l_); }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.l_ == b.l_;
  }

 private:
  static std::uint64_t pack(const std::vector<int>& bits) {
    std::uint64_t out = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
      if (bits[q] != 0 && bits[q] != 1) throw Error(ErrorKind::InvalidArgument, "PauliString: bits must be 0 or 1");
      if (bits[q] != 0) out |= std::uint64_t{1} << q;
    }
    return out;
  }

  int n_;
  std::uint64_t k_;
  std::uint64_t l_;
  int x_weight_ = 0;
  int z_weight_ = 0;
};

/// Reverses the qubit mask into basis-index bit order (qubit 0 = MSB).
inline std::uint64_t qubit_mask_to_index_mask(std::uint64_t mask, int n) {
  std::uint64_t out = 0;
  for (int q = 0; q < n; ++q) {
    if ((mask >> q) & 1U) out |= std::uint64_t{1} << (n - 1 - q);
  }
  return out;
}

/// Adds coeff · ⊗ σx^{k_q}σz^{l_q} (without the i^{k·l} factor) into `out`.
/// Masks are in basis-index bit order.
inline void accumulate_xz_string(Matrix& out, std::uint64_t k_index, std::uint64_t l_index, complex coeff) {
  const auto dim = static_cast<std::uint64_t>(out.rows());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(l_index & b) & 1) ? -1.0 : 1.0;
    out(static_cast<Index>(b ^ k_index), static_cast<Index>(b)) += coeff * sign;
  }
}

inline complex i_power(int exponent) {
  switch (((exponent % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline HermitianOperator pauli_matrix(const PauliString& p) {
  require_qubits(p.qubits(), kMaxDenseQubits, "pauli_matrix");
  const int n = p.qubits();
  const Index dim = Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  accumulate_xz_string(out, qubit_mask_to_index_mask(p.k_mask(), n), qubit_mask_to_index_mask(p.l_mask(), n),
                       i_power(p.kl_dot()));
  return HermitianOperator(out);
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

/// |f_j⟩ = Σ_k e^{2πi jk/2^n}|k⟩ / √(2^n); T|f_j⟩ = e^{−2πi j/2^n}|f_j⟩.
inline Vector fourier_state(int n, std::int64_t j) {
  require_qubits(n, 20, "fourier_state");
  const std::int64_t dim = std::int64_t{1} << n;
  if (j < 0 || j >= dim) throw Error(ErrorKind::IndexOutOfRange, "fourier_state: index out of range");
  Vector out(dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::int64_t k = 0; k < dim; ++k) {
    // Reduce jk mod 2^n in integers before converting to an angle.
    const auto phase_index = static_cast<double>((j * k) & (dim - 1));
    const double angle = 2.0 * std::numbers::pi * phase_index / static_cast<double>(dim);
    out(k) = std::polar(norm, angle);
  }
  return out;
}

/// Columns are |f_0⟩ … |f_{2^n−1}⟩.
inline Matrix fourier_basis(int n) {
  require_qubits(n, kMaxDenseQubits, "fourier_basis");
  const Index dim = Index{1} << n;
  Matrix f(dim, dim);
  for (Index j = 0; j < dim; ++j) f.col(j) = fourier_state(n, j);
  return f;
}

inline Vector ghz_state(int n) {
  require_qubits(n, kMaxDenseQubits, "ghz_state");
  const Index dim = Index{1} << n;
  Vector out = Vector::Zero(dim);
  out(0) = std::numbers::sqrt2 / 2.0;
  out(dim - 1) = std::numbers::sqrt2 / 2.0;
  return out;
}

}  // namespace symtwirl
