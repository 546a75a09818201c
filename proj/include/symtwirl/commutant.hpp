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
 * The commutant A = {A : [A, U_g] = 0 ∀g} of a finite representation and
 * the parameterization of symmetric states it induces.
 *
 * Up to a unitary change of basis, A = ⊕_α L(C^{n_α}) ⊗ I_{d_α}, where d_α
 * is the dimension of the α-th irrep and n_α its multiplicity. In the basis
 * produced here the column index inside block α is c·d_α + m, with c the
 * multiplicity index and m the irrep index, so commutant elements read
 * K_α ⊗ I_{d_α} and group elements read I_{n_α} ⊗ V_α.
 *
 * A symmetric state is ρ = ⊕_α q_α ρ_α ⊗ I_{d_α}/d_α with
 * ρ_α = I/n_α + r_α·λ_α/2 in terms of generalized Gell-Mann matrices.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "symtwirl/groups.hpp"
#include "symtwirl/linalg.hpp"
#include "symtwirl/rng.hpp"
#include "symtwirl/twirl.hpp"

namespace symtwirl {

inline constexpr int kMaxSuDimension = 16;
inline constexpr Index kMaxCommutantDim = 256;
inline constexpr int kDecompositionAttempts = 5;

// ---------------------------------------------------------------------------
// su(n) generators
// ---------------------------------------------------------------------------

/// Generalized Gell-Mann matrices, tr(λ_i λ_j) = 2δ_ij, in the standard
/// ordering: for each column k = 1..n−1, the symmetric and antisymmetric
/// pairs (j, k) for j < k, followed by the k-th diagonal element. For n = 2
/// this is (σx, σy, σz); for n = 3 it is λ_1 … λ_8.
///
/// Structure constants are kept sparse:
///   [λ_i, λ_j] = 2i Σ_k f_ijk λ_k,  {λ_i, λ_j} = (4/n)δ_ij I + 2 Σ_k g_ijk λ_k.
class SuGenerators {
 public:
  struct Entry {
    std::uint32_t i, j, k;
    double value;
  };

  explicit SuGenerators(int n) : n_(n) {
    if (n < 2 || n > kMaxSuDimension) {
      throw Error(ErrorKind::UnsupportedSize, "su_generators: n = " + std::to_string(n) + " outside [2, 16]");
    }
    build_generators();
    build_structure_constants();
  }

  int n() const noexcept { return n_; }
  int count() const noexcept { return n_ * n_ - 1; }
  const std::vector<Matrix>& lambdas() const noexcept { return lambdas_; }
  const Matrix& lambda(int i) const { return lambdas_[static_cast<std::size_t>(i)]; }
  const std::vector<Entry>& f_entries() const noexcept { return f_; }
  const std::vector<Entry>& g_entries() const noexcept { return g_; }

  double f(int i, int j, int k) const { return lookup(f_, i, j, k); }
  double g(int i, int j, int k) const { return lookup(g_, i, j, k); }

  /// R_jk = Σ_i r_i g_ijk.
  RealMatrix contract_g(const RealVector& r) const {
    const int m = count();
    RealMatrix out = RealMatrix::Zero(m, m);
    for (const auto& e : g_) out(e.j, e.k) += r(e.i) * e.value;
    return out;
  }

  /// Σ_i c_i λ_i.
  Matrix combine(const RealVector& coeffs) const {
    Matrix out = Matrix::Zero(n_, n_);
    for (int i = 0; i < count(); ++i) out += coeffs(i) * lambdas_[static_cast<std::size_t>(i)];
    return out;
  }

  /// Coefficients c_i = tr(A λ_i) for a Hermitian A (real parts).
  RealVector traces(const Matrix& a) const {
    RealVector out(count());
    for (int i = 0; i < count(); ++i) out(i) = trace_product(a, lambdas_[static_cast<std::size_t>(i)]).real();
    return out;
  }

 private:
  struct Sparse {
    std::vector<Index> row, col;
    std::vector<complex> value;
  };

  void build_generators() {
    for (int k = 1; k < n_; ++k) {
      for (int j = 0; j < k; ++j) {
        Matrix sym = Matrix::Zero(n_, n_);
        sym(j, k) = 1.0;
        sym(k, j) = 1.0;
        add(sym, {{j, k, complex(1, 0)}, {k, j, complex(1, 0)}});
        Matrix anti = Matrix::Zero(n_, n_);
        anti(j, k) = complex(0, -1);
        anti(k, j) = complex(0, 1);
        add(anti, {{j, k, complex(0, -1)}, {k, j, complex(0, 1)}});
      }
      const double scale = std::sqrt(2.0 / (static_cast<double>(k) * (k + 1)));
      Matrix diag = Matrix::Zero(n_, n_);
      std::vector<Triplet> entries;
      for (int j = 0; j < k; ++j) {
        diag(j, j) = scale;
        entries.push_back({j, j, complex(scale, 0)});
      }
      diag(k, k) = -scale * k;
      entries.push_back({k, k, complex(-scale * k, 0)});
      add(diag, entries);
    }
  }

  struct Triplet {
    int r, c;
    complex v;
  };

  void add(const Matrix& dense, const std::vector<Triplet>& entries) {
    lambdas_.push_back(dense);
    Sparse s;
    for (const auto& t : entries) {
      s.row.push_back(t.r);
      s.col.push_back(t.c);
      s.value.push_back(t.v);
    }
    sparse_.push_back(std::move(s));
  }

  // f_ijk = tr([λi,λj]λk)/(4i), g_ijk = tr({λi,λj}λk)/4, from sparse products.
  void build_structure_constants() {
    const int m = count();
    Matrix product(n_, n_);
    for (int i = 0; i < m; ++i) {
      const Sparse& a = sparse_[static_cast<std::size_t>(i)];
      for (int j = 0; j < m; ++j) {
        const Sparse& b = sparse_[static_cast<std::size_t>(j)];
        product.setZero();
        for (std::size_t x = 0; x < a.row.size(); ++x) {
          for (std::size_t y = 0; y < b.row.size(); ++y) {
            if (a.col[x] == b.row[y]) product(a.row[x], b.col[y]) += a.value[x] * b.value[y];
          }
        }
        // λjλi = (λiλj)†.
        const Matrix comm = product - product.adjoint();
        const Matrix anti = product + product.adjoint();
        for (int k = 0; k < m; ++k) {
          const Sparse& c = sparse_[static_cast<std::size_t>(k)];
          complex tc = 0.0;
          complex ta = 0.0;
          for (std::size_t z = 0; z < c.row.size(); ++z) {
            tc += comm(c.col[z], c.row[z]) * c.value[z];
            ta += anti(c.col[z], c.row[z]) * c.value[z];
          }
          const double fv = (tc / complex(0.0, 4.0)).real();
          const double gv = ta.real() / 4.0;
          const auto key = [&](double v) { return Entry{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k), v}; };
          if (std::abs(fv) > 1e-14) f_.push_back(key(fv));
          if (std::abs(gv) > 1e-14) g_.push_back(key(gv));
        }
      }
    }
  }

  double lookup(const std::vector<Entry>& entries, int i, int j, int k) const {
    const auto less = [](const Entry& e, const std::array<std::uint32_t, 3>& t) {
      return std::tie(e.i, e.j, e.k) < std::tie(t[0], t[1], t[2]);
    };
    const std::array<std::uint32_t, 3> target{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                              static_cast<std::uint32_t>(k)};
    const auto it = std::lower_bound(entries.begin(), entries.end(), target, less);
    if (it != entries.end() && it->i == target[0] && it->j == target[1] && it->k == target[2]) return it->value;
    return 0.0;
  }

  int n_;
  std::vector<Matrix> lambdas_;
  std::vector<Sparse> sparse_;
  std::vector<Entry> f_;  // sorted by (i, j, k) by construction
  std::vector<Entry> g_;
};

inline std::shared_ptr<const SuGenerators> su_generators(int n) { return std::make_shared<const SuGenerators>(n); }

// ---------------------------------------------------------------------------
// BlockStructure
// ---------------------------------------------------------------------------

struct Block {
  int multiplicity = 1;  // n_α
  int irrep_dim = 1;     // d_α
  Index offset = 0;      // first basis column of the block
  Index size() const { return static_cast<Index>(multiplicity) * irrep_dim; }
  int bloch_size() const { return multiplicity * multiplicity - 1; }
};

class BlockStructure {
 public:
  /// Validates Σ n_α d_α = dim and unitarity of `basis`; assigns offsets in
  /// the given order.
  BlockStructure(std::vector<Block> blocks, Matrix basis) : blocks_(std::move(blocks)), basis_(std::move(basis)) {
    Index offset = 0;
    for (auto& b : blocks_) {
      if (b.multiplicity < 1 || b.irrep_dim < 1) throw Error(ErrorKind::InvalidArgument, "BlockStructure: bad block");
      b.offset = offset;
      offset += b.size();
    }
    if (basis_.rows() != basis_.cols() || offset != basis_.rows()) {
      throw Error(ErrorKind::ShapeMismatch, "BlockStructure: block sizes do not sum to the basis dimension");
    }
    if (!is_unitary(basis_)) throw Error(ErrorKind::InvalidMatrix, "BlockStructure: basis is not unitary");
    generators_.resize(blocks_.size());
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const int n = blocks_[a].multiplicity;
      if (n < 2) continue;
      for (std::size_t prev = 0; prev < a; ++prev) {
        if (generators_[prev] && generators_[prev]->n() == n) generators_[a] = generators_[prev];
      }
      if (!generators_[a] && n <= kMaxSuDimension) generators_[a] = su_generators(n);
    }
  }

  Index dim() const noexcept { return basis_.rows(); }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& block(std::size_t a) const { return blocks_[a]; }
  const Matrix& basis() const noexcept { return basis_; }

  /// Gell-Mann set of block a; requires 2 <= n_α <= 16.
  const SuGenerators& generators(std::size_t a) const {
    if (!generators_[a]) {
      throw Error(ErrorKind::UnsupportedSize, "BlockStructure: no su(n) generators for multiplicity " +
                                                  std::to_string(blocks_[a].multiplicity));
    }
    return *generators_[a];
  }

  /// basis† A basis.
  Matrix to_block_basis(const Matrix& a) const { return basis_.adjoint() * a * basis_; }
  Matrix from_block_basis(const Matrix& a) const { return basis_ * a * basis_.adjoint(); }

  /// Splits `in_basis` (already conjugated) as ⊕_α K_α ⊗ I_{d_α}: returns
  /// the K_α (partial trace over the irrep factor divided by d_α) and the
  /// max-norm of the remainder.
  std::vector<Matrix> split(const Matrix& in_basis, double* deviation) const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    Matrix rebuilt = Matrix::Zero(in_basis.rows(), in_basis.cols());
    for (const auto& b : blocks_) {
      Matrix k = Matrix::Zero(b.multiplicity, b.multiplicity);
      for (int c = 0; c < b.multiplicity; ++c) {
        for (int c2 = 0; c2 < b.multiplicity; ++c2) {
          complex acc = 0.0;
          for (int m = 0; m < b.irrep_dim; ++m) {
            acc += in_basis(b.offset + c * b.irrep_dim + m, b.offset + c2 * b.irrep_dim + m);
          }
          k(c, c2) = acc / static_cast<double>(b.irrep_dim);
        }
      }
      rebuilt.block(b.offset, b.offset, b.size(), b.size()) = kron(k, Matrix::Identity(b.irrep_dim, b.irrep_dim));
      out.push_back(std::move(k));
    }
    if (deviation != nullptr) *deviation = max_norm(Matrix(in_basis - rebuilt));
    return out;
  }

  /// ⊕_α K_α ⊗ I_{d_α}, in the block basis.
  Matrix assemble(const std::vector<Matrix>& pieces) const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const auto& b = blocks_[a];
      out.block(b.offset, b.offset, b.size(), b.size()) = kron(pieces[a], Matrix::Identity(b.irrep_dim, b.irrep_dim));
    }
    return out;
  }

 private:
  std::vector<Block> blocks_;
  Matrix basis_;
  std::vector<std::shared_ptr<const SuGenerators>> generators_;
};

// ---------------------------------------------------------------------------
// decompose_commutant
// ---------------------------------------------------------------------------

namespace detail {

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

/// Unitary polar factor of a square matrix.
inline Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct Attempt {
  bool ok = false;
  std::string reason;
  std::vector<Block> blocks;
  Matrix basis;
};

inline Attempt decompose_once(const GroupRep& rep, std::uint64_t seed, double tolerance) {
  Attempt out;
  const Index dim = rep.dim();
  Rng rng(seed);
  const Matrix probe = twirl_dense(HermitianOperator(random_hermitian(dim, rng)), rep).matrix();
  const Matrix coupler = twirl_dense(HermitianOperator(random_hermitian(dim, rng)), rep).matrix();
  const Matrix witness = twirl_dense(HermitianOperator(random_hermitian(dim, rng)), rep).matrix();

  // (ii)-(iii) eigenvalue clusters of a generic commutant element.
  const EigenDecomposition eig = eig_hermitian(probe);
  const RealVector& values = eig.eigenvalues;
  const double spread = values(dim - 1) - values(0);
  const double scale = std::max(spread, values.cwiseAbs().maxCoeff());
  const double gap = tolerance * scale;
  std::vector<std::vector<Index>> clusters{{0}};
  for (Index i = 1; i < dim; ++i) {
    if (values(i) - values(i - 1) <= gap) {
      clusters.back().push_back(i);
    } else {
      clusters.push_back({i});
    }
  }
  const auto cluster_count = static_cast<int>(clusters.size());
  std::vector<Matrix> spaces;
  std::vector<double> means;
  for (const auto& c : clusters) {
    Matrix e(dim, static_cast<Index>(c.size()));
    double mean = 0.0;
    for (std::size_t t = 0; t < c.size(); ++t) {
      e.col(static_cast<Index>(t)) = eig.eigenvectors.col(c[t]);
      mean += values(c[t]);
    }
    spaces.push_back(std::move(e));
    means.push_back(mean / static_cast<double>(c.size()));
  }

  // (iv) clusters coupled by an independent commutant element share an
  // isotypic sector.
  const double coupler_scale = std::max(1e-300, max_norm(coupler));
  const double coupling_cut = 1e-6 * coupler_scale;
  std::vector<int> parent(static_cast<std::size_t>(cluster_count));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<Matrix> coupler_times_space;
  for (const auto& e : spaces) coupler_times_space.push_back(coupler * e);
  for (int a = 0; a < cluster_count; ++a) {
    for (int b = a + 1; b < cluster_count; ++b) {
      const Matrix block = spaces[static_cast<std::size_t>(b)].adjoint() * coupler_times_space[static_cast<std::size_t>(a)];
      if (max_norm(block) > coupling_cut) {
        parent[static_cast<std::size_t>(find_root(parent, b))] = find_root(parent, a);
      }
    }
  }
  std::vector<std::vector<int>> sectors;
  std::vector<int> sector_of(static_cast<std::size_t>(cluster_count), -1);
  for (int a = 0; a < cluster_count; ++a) {
    const int root = find_root(parent, a);
    if (sector_of[static_cast<std::size_t>(root)] < 0) {
      sector_of[static_cast<std::size_t>(root)] = static_cast<int>(sectors.size());
      sectors.emplace_back();
    }
    sectors[static_cast<std::size_t>(sector_of[static_cast<std::size_t>(root)])].push_back(a);
  }

  struct Sector {
    int multiplicity;
    int irrep_dim;
    double mean;
    Matrix columns;
  };
  std::vector<Sector> built;
  for (const auto& members : sectors) {
    const Matrix& lead = spaces[static_cast<std::size_t>(members.front())];
    const Index d = lead.cols();
    Sector s{static_cast<int>(members.size()), static_cast<int>(d), 0.0, Matrix(dim, d * static_cast<Index>(members.size()))};
    for (std::size_t c = 0; c < members.size(); ++c) {
      const Matrix& space = spaces[static_cast<std::size_t>(members[c])];
      if (space.cols() != d) {
        out.reason = "clusters in one sector have unequal dimension";
        return out;
      }
      s.mean += means[static_cast<std::size_t>(members[c])];
      Matrix transported = lead;
      if (c > 0) {
        // E_c† A E_lead is (scalar) × unitary on the irrep factor.
        const Matrix map = space.adjoint() * coupler_times_space[static_cast<std::size_t>(members.front())];
        Eigen::JacobiSVD<Matrix> svd(map);
        const RealVector sv = svd.singularValues();
        if (sv(sv.size() - 1) < coupling_cut || sv(sv.size() - 1) < 1e-6 * sv(0)) {
          out.reason = "weak coupling to the sector's lead cluster";
          return out;
        }
        transported = space * polar_unitary(map);
      }
      for (Index m = 0; m < d; ++m) s.columns.col(static_cast<Index>(c) * d + m) = transported.col(m);
    }
    s.mean /= static_cast<double>(members.size());
    built.push_back(std::move(s));
  }

  // Descending n·d, then descending n, then ascending mean probe eigenvalue.
  std::stable_sort(built.begin(), built.end(), [](const Sector& a, const Sector& b) {
    const int sa = a.multiplicity * a.irrep_dim;
    const int sb = b.multiplicity * b.irrep_dim;
    if (sa != sb) return sa > sb;
    if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
    return a.mean < b.mean;
  });

  Matrix basis(dim, dim);
  Index col = 0;
  for (const auto& s : built) {
    basis.middleCols(col, s.columns.cols()) = s.columns;
    col += s.columns.cols();
    out.blocks.push_back(Block{s.multiplicity, s.irrep_dim, 0});
  }
  if (!is_unitary(basis)) {
    out.reason = "assembled basis is not unitary";
    return out;
  }

  // A fresh commutant element must show the K ⊗ I pattern in the new basis.
  const BlockStructure candidate(out.blocks, basis);
  double deviation = 0.0;
  candidate.split(candidate.to_block_basis(witness), &deviation);
  if (deviation > tolerance * std::max(1.0, max_norm(witness))) {
    out.reason = "witness element is not block structured (deviation " + std::to_string(deviation) + ")";
    return out;
  }
  out.ok = true;
  out.basis = std::move(basis);
  return out;
}

}  // namespace detail

/// Randomized commutant decomposition: twirl random Hermitian matrices into
/// the commutant, cluster the spectrum of one of them into irrep-sized
/// eigenspaces, group clusters into sectors using a second sample, align
/// the irrep factors across each sector, and confirm the pattern with a
/// third sample. Up to five attempts with fresh samples.
inline BlockStructure decompose_commutant(const GroupRep& rep, std::uint64_t seed, double tolerance = tol::kCluster) {
  if (rep.dim() > kMaxCommutantDim) {
    throw Error(ErrorKind::UnsupportedSize, "decompose_commutant: dim " + std::to_string(rep.dim()) + " > 256");
  }
  std::string last_reason;
  for (int attempt = 0; attempt < kDecompositionAttempts; ++attempt) {
    auto result = detail::decompose_once(rep, mix_seed(seed, static_cast<std::uint64_t>(attempt)), tolerance);
    if (result.ok) return BlockStructure(std::move(result.blocks), std::move(result.basis));
    last_reason = result.reason;
  }
  throw Error(ErrorKind::DecompositionFailed, "decompose_commutant: " + last_reason);
}

// ---------------------------------------------------------------------------
// Symmetric state parameters
// ---------------------------------------------------------------------------

struct SymmetricStateParams {
  std::vector<double> q;
  std::vector<RealVector> r;  // r[α] has n_α² − 1 entries
};

inline void require_param_shape(const BlockStructure& bs, const SymmetricStateParams& p, const char* where) {
  if (p.q.size() != bs.block_count() || p.r.size() != bs.block_count()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(where) + ": parameter count does not match block count");
  }
  for (std::size_t a = 0; a < bs.block_count(); ++a) {
    if (p.r[a].size() != bs.block(a).bloch_size()) {
      throw Error(ErrorKind::ShapeMismatch, std::string(where) + ": Bloch vector length mismatch");
    }
  }
}

/// ρ_α = I/n_α + r_α·λ_α/2.
inline Matrix bloch_to_density(const BlockStructure& bs, std::size_t a, const RealVector& r) {
  const int n = bs.block(a).multiplicity;
  Matrix rho = Matrix::Identity(n, n) / static_cast<double>(n);
  if (n > 1) rho += 0.5 * bs.generators(a).combine(r);
  return rho;
}

inline DensityMatrix build_state(const BlockStructure& bs, const SymmetricStateParams& p) {
  require_param_shape(bs, p, "build_state");
  double total = 0.0;
  for (double q : p.q) {
    if (!(q >= 0.0)) throw Error(ErrorKind::InvalidArgument, "build_state: negative weight");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorKind::InvalidArgument, "build_state: weights do not sum to one");
  std::vector<Matrix> pieces;
  for (std::size_t a = 0; a < bs.block_count(); ++a) {
    const Matrix rho_a = bloch_to_density(bs, a, p.r[a]);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_a, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues()(0) < -tol::kBlochPsd) {
      throw Error(ErrorKind::InvalidBloch, "build_state: block " + std::to_string(a) + " has negative eigenvalue " +
                                             std::to_string(solver.eigenvalues()(0)));
    }
    pieces.push_back(rho_a * (p.q[a] / bs.block(a).irrep_dim));
  }
  return DensityMatrix(bs.from_block_basis(bs.assemble(pieces)));
}

inline SymmetricStateParams extract_params(const DensityMatrix& rho, const BlockStructure& bs) {
  require_same_dim(rho.dim(), bs.dim(), "extract_params");
  double deviation = 0.0;
  const auto pieces = bs.split(bs.to_block_basis(rho.matrix()), &deviation);
  if (deviation > 1e-7) {
    throw Error(ErrorKind::NotSymmetric, "extract_params: state is not in the commutant (deviation " +
                                             std::to_string(deviation) + ")");
  }
  SymmetricStateParams p;
  for (std::size_t a = 0; a < bs.block_count(); ++a) {
    const auto& b = bs.block(a);
    // pieces[a] = q_α ρ_α / d_α.
    const double q = pieces[a].trace().real() * b.irrep_dim;
    p.q.push_back(q);
    RealVector r = RealVector::Zero(b.bloch_size());
    if (b.multiplicity > 1 && q > tol::kZeroWeight) r = bs.generators(a).traces(pieces[a] * (b.irrep_dim / q));
    p.r.push_back(std::move(r));
  }
  return p;
}

/// Flat-Dirichlet weights and Ginibre-induced block states.
inline SymmetricStateParams random_symmetric_state(const BlockStructure& bs, std::uint64_t seed) {
  Rng rng(seed);
  SymmetricStateParams p;
  double total = 0.0;
  for (std::size_t a = 0; a < bs.block_count(); ++a) {
    p.q.push_back(rng.exponential());
    total += p.q.back();
  }
  for (double& q : p.q) q /= total;
  for (std::size_t a = 0; a < bs.block_count(); ++a) {
    const int n = bs.block(a).multiplicity;
    if (n == 1) {
      p.r.emplace_back(0);
      continue;
    }
    const Matrix g = random_ginibre(n, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    p.r.push_back(bs.generators(a).traces(rho));
  }
  return p;
}

}  // namespace symtwirl
