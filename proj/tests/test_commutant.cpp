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

#include <utility>

#include "support.hpp"

namespace symtwirl {
namespace {

using testing::diff;

std::vector<std::pair<int, int>> shape(const BlockStructure& bs) {
  std::vector<std::pair<int, int>> out;
  for (const auto& b : bs.blocks()) out.emplace_back(b.multiplicity, b.irrep_dim);
  return out;
}

// su(n)

TEST(SuGenerators, QubitCaseIsPauliWithLeviCivita) {
  const auto su = su_generators(2);
  ASSERT_EQ(su->count(), 3);
  EXPECT_LE(diff(su->lambda(0), pauli_x()), 0.0);
  EXPECT_LE(diff(su->lambda(1), pauli_y()), 0.0);
  EXPECT_LE(diff(su->lambda(2), pauli_z()), 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        // ε_ijk for distinct indices: sign of the permutation (i, j, k).
        const double eps = (i == j || j == k || i == k) ? 0.0 : ((j - i + 3) % 3 == 1 ? 1.0 : -1.0);
        EXPECT_NEAR(su->f(i, j, k), eps, 1e-14);
        EXPECT_NEAR(su->g(i, j, k), 0.0, 1e-14);
      }
    }
  }
}

TEST(SuGenerators, QutritTraceOrthonormality) {
  const auto su = su_generators(3);
  ASSERT_EQ(su->count(), 8);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(std::abs(su->lambda(i).trace()), 0.0, 1e-14);
    for (int j = 0; j < 8; ++j) {
      EXPECT_NEAR(std::abs(trace_product(su->lambda(i), su->lambda(j)) - complex(i == j ? 2.0 : 0.0, 0.0)), 0.0, 1e-10);
    }
  }
}

TEST(SuGenerators, StandardGellMannOrdering) {
  const auto su = su_generators(3);
  Matrix l8 = Matrix::Zero(3, 3);
  l8(0, 0) = 1.0;
  l8(1, 1) = 1.0;
  l8(2, 2) = -2.0;
  l8 /= std::sqrt(3.0);
  EXPECT_LE(diff(su->lambda(7), l8), 1e-15);
  Matrix l2 = Matrix::Zero(3, 3);
  l2(0, 1) = complex(0.0, -1.0);
  l2(1, 0) = complex(0.0, 1.0);
  EXPECT_LE(diff(su->lambda(1), l2), 0.0);
  EXPECT_NEAR(su->g(0, 0, 7), 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(su->f(0, 1, 2), 1.0, 1e-14);
  EXPECT_NEAR(su->f(3, 4, 7), std::sqrt(3.0) / 2.0, 1e-14);
}

TEST(SuGenerators, StructureConstantsReproduceProductsProperty) {
  for (int n = 2; n <= 6; ++n) {
    const auto su = su_generators(n);
    const int m = su->count();
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Matrix expected = (i == j ? 2.0 / n : 0.0) * Matrix::Identity(n, n);
        for (int k = 0; k < m; ++k) expected += complex(su->g(i, j, k), su->f(i, j, k)) * su->lambda(k);
        EXPECT_LE(diff(su->lambda(i) * su->lambda(j), expected), 1e-9) << "n=" << n << " i=" << i << " j=" << j;
      }
    }
  }
}

TEST(SuGenerators, TensorSymmetries) {
  const auto su = su_generators(4);
  for (const auto& e : su->f_entries()) {
    EXPECT_NEAR(su->f(e.j, e.i, e.k), -e.value, 1e-14);
    EXPECT_NEAR(su->f(e.j, e.k, e.i), e.value, 1e-14);
  }
  for (const auto& e : su->g_entries()) {
    EXPECT_NEAR(su->g(e.j, e.i, e.k), e.value, 1e-14);
    EXPECT_NEAR(su->g(e.k, e.j, e.i), e.value, 1e-14);
  }
}

TEST(SuGenerators, SizeRange) {
  EXPECT_THROW_KIND(su_generators(1), ErrorKind::UnsupportedSize);
  EXPECT_THROW_KIND(su_generators(17), ErrorKind::UnsupportedSize);
  EXPECT_EQ(su_generators(16)->count(), 255);
}

// decompose_commutant

TEST(DecomposeCommutant, Z2Qubit) {
  const BlockStructure bs = decompose_commutant(z2_qubit_rep(), 1);
  EXPECT_EQ(shape(bs), (std::vector<std::pair<int, int>>{{1, 1}, {1, 1}}));
}

TEST(DecomposeCommutant, TranslationGivesFourierBasis) {
  for (int n = 1; n <= 4; ++n) {
    const BlockStructure bs = decompose_commutant(translation_rep(n), 3);
    ASSERT_EQ(bs.block_count(), std::size_t{1} << n);
    for (const auto& b : bs.blocks()) EXPECT_EQ(std::make_pair(b.multiplicity, b.irrep_dim), std::make_pair(1, 1));
    // Each basis column is a Fourier vector up to phase.
    const Matrix overlap = fourier_basis(n).adjoint() * bs.basis();
    for (Index c = 0; c < overlap.cols(); ++c) EXPECT_NEAR(overlap.col(c).cwiseAbs().maxCoeff(), 1.0, 1e-8);
  }
}

TEST(DecomposeCommutant, SchurWeylShapes) {
  EXPECT_EQ(shape(decompose_commutant(permutation_rep(2), 5)), (std::vector<std::pair<int, int>>{{3, 1}, {1, 1}}));
  EXPECT_EQ(shape(decompose_commutant(permutation_rep(3), 5)), (std::vector<std::pair<int, int>>{{4, 1}, {2, 2}}));
  EXPECT_EQ(shape(decompose_commutant(permutation_rep(4), 5)),
            (std::vector<std::pair<int, int>>{{3, 3}, {5, 1}, {1, 2}}));
}

TEST(DecomposeCommutant, BlockConsistencyProperty) {
  for (const GroupRep& rep : {z2_qubit_rep(), translation_rep(3), permutation_rep(3), permutation_rep(4)}) {
    const BlockStructure bs = decompose_commutant(rep, 11);
    Index total = 0;
    for (const auto& b : bs.blocks()) total += b.size();
    EXPECT_EQ(total, rep.dim());
    EXPECT_TRUE(is_unitary(bs.basis()));
    for (std::size_t g = 0; g < rep.order(); ++g) {
      const Matrix u = bs.to_block_basis(rep.element(g));
      Matrix expected = Matrix::Zero(u.rows(), u.cols());
      for (const auto& b : bs.blocks()) {
        // I_n ⊗ V with V read from the first multiplicity copy.
        const Matrix v = u.block(b.offset, b.offset, b.irrep_dim, b.irrep_dim);
        EXPECT_TRUE(is_unitary(v, 1e-7));
        expected.block(b.offset, b.offset, b.size(), b.size()) = kron(Matrix::Identity(b.multiplicity, b.multiplicity), v);
      }
      EXPECT_LE(diff(u, expected), 1e-7);
    }
    // Twirled random Hermitians take the K ⊗ I form.
    Rng rng(5);
    const Matrix y = twirl_dense(HermitianOperator(random_hermitian(rep.dim(), rng)), rep).matrix();
    double deviation = 1.0;
    bs.split(bs.to_block_basis(y), &deviation);
    EXPECT_LE(deviation, 1e-7);
  }
}

TEST(DecomposeCommutant, DeterministicForSeed) {
  const BlockStructure a = decompose_commutant(permutation_rep(3), 42);
  const BlockStructure b = decompose_commutant(permutation_rep(3), 42);
  EXPECT_EQ(a.basis(), b.basis());
}

TEST(DecomposeCommutant, DimensionLimit) {
  EXPECT_THROW_KIND(decompose_commutant(translation_rep(9), 1), ErrorKind::UnsupportedSize);
}

TEST(DecomposeCommutant, TrivialGroupIsOneFullBlock) {
  const BlockStructure bs = decompose_commutant(GroupRep::trivial(3), 2);
  EXPECT_EQ(shape(bs), (std::vector<std::pair<int, int>>{{3, 1}}));
}

// build_state / extract_params

TEST(BuildState, Z2Diagonal) {
  const BlockStructure bs = decompose_commutant(z2_qubit_rep(), 1);
  const DensityMatrix rho = build_state(bs, {{0.3, 0.7}, {RealVector(), RealVector()}});
  EXPECT_LE(std::abs(rho.matrix()(0, 1)), 1e-15);
  // Which block holds |0⟩ is fixed by the ordering rule; the weights are {0.3, 0.7}.
  const double a = rho.matrix()(0, 0).real(), b = rho.matrix()(1, 1).real();
  EXPECT_NEAR(std::min(a, b), 0.3, 1e-14);
  EXPECT_NEAR(std::max(a, b), 0.7, 1e-14);
  const SymmetricStateParams back = extract_params(rho, bs);
  EXPECT_NEAR(back.q[0], 0.3, 1e-14);
  EXPECT_NEAR(back.q[1], 0.7, 1e-14);
}

TEST(BuildState, SingleQubitBlockMaximallyMixed) {
  const BlockStructure bs({Block{2, 1}}, Matrix::Identity(2, 2));
  const DensityMatrix rho = build_state(bs, {{1.0}, {RealVector::Zero(3)}});
  EXPECT_LE(diff(rho.matrix(), Matrix(Matrix::Identity(2, 2) / 2.0)), 1e-15);
}

TEST(BuildState, Errors) {
  const BlockStructure bs({Block{2, 1}}, Matrix::Identity(2, 2));
  RealVector r(3);
  r << 0.0, 0.0, 1.5;  // |r| > 1: eigenvalue 1/2 − 3/4 < 0
  EXPECT_THROW_KIND(build_state(bs, {{1.0}, {r}}), ErrorKind::InvalidBloch);
  EXPECT_THROW_KIND(build_state(bs, {{1.0}, {RealVector::Zero(2)}}), ErrorKind::ShapeMismatch);
  EXPECT_THROW_KIND(build_state(bs, {{1.0, 0.0}, {RealVector::Zero(3)}}), ErrorKind::ShapeMismatch);
}

TEST(ExtractParams, MaximallyMixedTwoQubits) {
  const BlockStructure bs = decompose_commutant(permutation_rep(2), 9);
  const SymmetricStateParams p = extract_params(DensityMatrix::maximally_mixed(4), bs);
  EXPECT_NEAR(p.q[0], 0.75, 1e-12);
  EXPECT_NEAR(p.q[1], 0.25, 1e-12);
  EXPECT_LE(p.r[0].cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ExtractParams, RejectsAsymmetricState) {
  const BlockStructure bs = decompose_commutant(permutation_rep(2), 9);
  Vector ket = Vector::Zero(4);
  ket(1) = 1.0;
  EXPECT_THROW_KIND(extract_params(DensityMatrix::pure(ket), bs), ErrorKind::NotSymmetric);
}

TEST(ExtractParams, RoundTripProperty) {
  for (const GroupRep& rep : {z2_qubit_rep(), translation_rep(3), permutation_rep(3), permutation_rep(4)}) {
    const BlockStructure bs = decompose_commutant(rep, 21);
    for (std::uint64_t s = 0; s < 100; ++s) {
      const SymmetricStateParams p = random_symmetric_state(bs, s);
      const DensityMatrix rho = build_state(bs, p);
      const SymmetricStateParams back = extract_params(rho, bs);
      for (std::size_t a = 0; a < bs.block_count(); ++a) {
        EXPECT_NEAR(back.q[a], p.q[a], 1e-9);
        if (p.r[a].size() > 0) {
          EXPECT_LE((back.r[a] - p.r[a]).cwiseAbs().maxCoeff(), 1e-9);
        }
      }
      EXPECT_LE(diff(build_state(bs, back).matrix(), rho.matrix()), 1e-8);
    }
  }
}

TEST(RandomSymmetricState, InvariantsProperty) {
  const GroupRep rep = permutation_rep(3);
  const BlockStructure bs = decompose_commutant(rep, 8);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const SymmetricStateParams p = random_symmetric_state(bs, s);
    double total = 0.0;
    for (double q : p.q) {
      EXPECT_GE(q, 0.0);
      total += q;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (std::size_t a = 0; a < bs.block_count(); ++a) {
      ASSERT_EQ(p.r[a].size(), bs.block(a).bloch_size());
      const Matrix rho_a = bloch_to_density(bs, a, p.r[a]);
      EXPECT_GE(eig_hermitian(rho_a).eigenvalues(0), -1e-9);
    }
    if (s % 100 == 0) {
      EXPECT_TRUE(verify_symmetry(build_state(bs, p), rep, 1e-8));
    }
  }
}

TEST(RandomSymmetricState, DeterministicForSeed) {
  const BlockStructure bs = decompose_commutant(permutation_rep(3), 8);
  const SymmetricStateParams a = random_symmetric_state(bs, 77), b = random_symmetric_state(bs, 77);
  EXPECT_EQ(a.q, b.q);
  for (std::size_t i = 0; i < a.r.size(); ++i) EXPECT_EQ(a.r[i], b.r[i]);
}

}  // namespace
}  // namespace symtwirl
