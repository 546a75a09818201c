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
 * Quantum Fisher information of symmetric states, the gradient of
 * β = ⟨X⟩_ρ in the parameters θ = (q, r_1, …, r_s), the quantum Cramér-Rao
 * bound ∂β H⁻¹ ∂βᵀ, and its identity with (ΔY)² for Y = T(X).
 *
 * Parameter layout (shared by QfiMatrix and grad_beta): blocks with
 * q_α <= 1e-12 are dropped; of the s retained blocks, the first s−1 weights
 * are free (the last is eliminated by Σq = 1) and come first, followed by
 * the Bloch vectors of retained blocks with n_α > 1, in block order.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "symtwirl/commutant.hpp"
#include "symtwirl/groups.hpp"
#include "symtwirl/linalg.hpp"
#include "symtwirl/twirl.hpp"

namespace symtwirl {

struct ParamLayout {
  std::vector<std::size_t> retained;  // block indices with q_α above threshold
  std::vector<Index> r_offset;        // per block; -1 if dropped or n_α = 1
  Index q_count = 0;
  Index size = 0;

  static ParamLayout make(const BlockStructure& bs, const SymmetricStateParams& p) {
    require_param_shape(bs, p, "ParamLayout");
    ParamLayout out;
    for (std::size_t a = 0; a < bs.block_count(); ++a) {
      if (p.q[a] > tol::kZeroWeight) out.retained.push_back(a);
    }
    if (out.retained.empty()) throw Error(ErrorKind::DegenerateWeight, "ParamLayout: no block carries weight");
    out.q_count = static_cast<Index>(out.retained.size()) - 1;
    out.r_offset.assign(bs.block_count(), -1);
    Index offset = out.q_count;
    for (std::size_t a : out.retained) {
      if (bs.block(a).multiplicity > 1) {
        out.r_offset[a] = offset;
        offset += bs.block(a).bloch_size();
      }
    }
    out.size = offset;
    return out;
  }
};

struct QfiMatrix {
  RealMatrix matrix;
  ParamLayout layout;
  Index dim_params() const { return matrix.rows(); }
};

/// Y_α = a_α I + b_α·λ_α on each multiplicity space.
struct BlockObservable {
  std::vector<double> a;
  std::vector<RealVector> b;
};

struct EstimationTask {
  HermitianOperator x;
  GroupRep rep;
  double epsilon = 1e-2;
};

enum class WeightPolicy {
  DropEmpty,  // blocks with q_α <= 1e-12 leave the parameter list
  Strict,     // any such block raises DegenerateWeight
};

inline BlockObservable block_observable(const HermitianOperator& y, const BlockStructure& bs) {
  require_same_dim(y.dim(), bs.dim(), "block_observable");
  double deviation = 0.0;
  const auto pieces = bs.split(bs.to_block_basis(y.matrix()), &deviation);
  if (deviation > 1e-8 * std::max(1.0, max_norm(y.matrix()))) {
    throw Error(ErrorKind::NotSymmetricObservable, "block_observable: operator is not in the commutant (deviation " +
                                                       std::to_string(deviation) + ")");
  }
  BlockObservable out;
  for (std::size_t a = 0; a < bs.block_count(); ++a) {
    const int n = bs.block(a).multiplicity;
    out.a.push_back(pieces[a].trace().real() / n);
    if (n == 1) {
      out.b.emplace_back(0);
      continue;
    }
    const auto& gens = bs.generators(a);
    RealVector b = gens.traces(pieces[a]) / 2.0;
    const Matrix rebuilt = Matrix::Identity(n, n) * out.a.back() + gens.combine(b);
    if (max_norm(Matrix(rebuilt - pieces[a])) > 1e-9 * std::max(1.0, max_norm(pieces[a]))) {
      throw Error(ErrorKind::NotSymmetricObservable, "block_observable: block is not Hermitian");
    }
    out.b.push_back(std::move(b));
  }
  return out;
}

/// ∂β = (l − l_s e, q_1 b_1, …, q_s b_s) with l_α = a_α + b_α·r_α.
inline RealVector grad_beta(const BlockObservable& bo, const BlockStructure& bs, const SymmetricStateParams& p) {
  if (bo.a.size() != bs.block_count() || bo.b.size() != bs.block_count()) {
    throw Error(ErrorKind::ShapeMismatch, "grad_beta: observable does not match block count");
  }
  const ParamLayout layout = ParamLayout::make(bs, p);
  for (std::size_t a = 0; a < bs.block_count(); ++a) {
    if (bo.b[a].size() != p.r[a].size()) throw Error(ErrorKind::ShapeMismatch, "grad_beta: Bloch length mismatch");
  }
  RealVector grad = RealVector::Zero(layout.size);
  const auto level = [&](std::size_t a) { return bo.a[a] + (bo.b[a].size() > 0 ? bo.b[a].dot(p.r[a]) : 0.0); };
  const double last = level(layout.retained.back());
  for (Index i = 0; i < layout.q_count; ++i) grad(i) = level(layout.retained[static_cast<std::size_t>(i)]) - last;
  for (std::size_t a : layout.retained) {
    if (layout.r_offset[a] >= 0) grad.segment(layout.r_offset[a], bo.b[a].size()) = p.q[a] * bo.b[a];
  }
  return grad;
}

/// β(θ) = Σ_α q_α l_α, the quantity grad_beta differentiates.
inline double beta_value(const BlockObservable& bo, const SymmetricStateParams& p) {
  double out = 0.0;
  for (std::size_t a = 0; a < bo.a.size(); ++a) {
    out += p.q[a] * (bo.a[a] + (bo.b[a].size() > 0 ? bo.b[a].dot(p.r[a]) : 0.0));
  }
  return out;
}

/// R_α − r_αᵀ r_α + (2/n_α) I.
inline RealMatrix bloch_metric(const BlockStructure& bs, std::size_t a, const RealVector& r) {
  const int n = bs.block(a).multiplicity;
  const int m = bs.block(a).bloch_size();
  return bs.generators(a).contract_g(r) - r * r.transpose() + RealMatrix::Identity(m, m) * (2.0 / n);
}

/// H = H(q) ⊕ [⊕_α H(r_α)], with H(q) = diag(1/q_1 … 1/q_{s−1}) + eᵀe/q_s and
/// H(r_α) = q_α [R_α − r_αᵀ r_α + (2/n_α) I]⁺ (Moore-Penrose when singular).
inline QfiMatrix qfi_closed_form(const BlockStructure& bs, const SymmetricStateParams& p,
                                 WeightPolicy policy = WeightPolicy::DropEmpty) {
  require_param_shape(bs, p, "qfi_closed_form");
  if (policy == WeightPolicy::Strict) {
    for (double q : p.q) {
      if (q <= tol::kZeroWeight) throw Error(ErrorKind::DegenerateWeight, "qfi_closed_form: block weight below 1e-12");
    }
  }
  QfiMatrix out{RealMatrix::Zero(0, 0), ParamLayout::make(bs, p)};
  const ParamLayout& layout = out.layout;
  out.matrix = RealMatrix::Zero(layout.size, layout.size);
  const double q_last = p.q[layout.retained.back()];
  for (Index i = 0; i < layout.q_count; ++i) {
    for (Index j = 0; j < layout.q_count; ++j) out.matrix(i, j) = 1.0 / q_last;
    out.matrix(i, i) += 1.0 / p.q[layout.retained[static_cast<std::size_t>(i)]];
  }
  for (std::size_t a : layout.retained) {
    if (layout.r_offset[a] < 0) continue;
    const int m = bs.block(a).bloch_size();
    out.matrix.block(layout.r_offset[a], layout.r_offset[a], m, m) = p.q[a] * pinv_symmetric(bloch_metric(bs, a, p.r[a]));
  }
  return out;
}

/// Symmetric logarithmic derivative: solves ∂ρ = (ρL + Lρ)/2 in the
/// eigenbasis of ρ, L_mn = 2(∂ρ)_mn/(p_m + p_n), zero where p_m + p_n <= pinv_tol.
inline HermitianOperator sld_numeric(const DensityMatrix& rho, const HermitianOperator& drho, double pinv_tol = tol::kPinv) {
  require_same_dim(rho.dim(), drho.dim(), "sld_numeric");
  const EigenDecomposition eig = eig_hermitian(rho.matrix());
  const Matrix& v = eig.eigenvectors;
  Matrix l = v.adjoint() * drho.matrix() * v;
  for (Index n = 0; n < l.cols(); ++n) {
    for (Index m = 0; m < l.rows(); ++m) {
      const double sum = eig.eigenvalues(m) + eig.eigenvalues(n);
      l(m, n) = sum > pinv_tol ? 2.0 * l(m, n) / sum : complex(0.0, 0.0);
    }
  }
  return HermitianOperator(v * l * v.adjoint());
}

/// Independent QFI: analytic ∂ρ/∂θ_k in the computational basis, SLDs from
/// sld_numeric, H_kl = tr[ρ (L_k ∘ L_l)].
inline QfiMatrix qfi_numeric(const BlockStructure& bs, const SymmetricStateParams& p, double pinv_tol = tol::kPinv) {
  const DensityMatrix rho = build_state(bs, p);
  QfiMatrix out{RealMatrix::Zero(0, 0), ParamLayout::make(bs, p)};
  const ParamLayout& layout = out.layout;

  std::vector<Matrix> zero_pieces;
  for (const auto& b : bs.blocks()) zero_pieces.push_back(Matrix::Zero(b.multiplicity, b.multiplicity));
  std::vector<HermitianOperator> derivatives;

  // ∂ρ/∂q_α = ρ_α ⊗ I/d_α − ρ_s ⊗ I/d_s.
  const std::size_t last = layout.retained.back();
  for (Index i = 0; i < layout.q_count; ++i) {
    const std::size_t a = layout.retained[static_cast<std::size_t>(i)];
    auto pieces = zero_pieces;
    pieces[a] = bloch_to_density(bs, a, p.r[a]) / static_cast<double>(bs.block(a).irrep_dim);
    pieces[last] = -bloch_to_density(bs, last, p.r[last]) / static_cast<double>(bs.block(last).irrep_dim);
    derivatives.emplace_back(bs.from_block_basis(bs.assemble(pieces)));
  }
  // ∂ρ/∂r_α,i = q_α λ_α,i ⊗ I/(2 d_α).
  for (std::size_t a : layout.retained) {
    if (layout.r_offset[a] < 0) continue;
    const auto& gens = bs.generators(a);
    for (int i = 0; i < gens.count(); ++i) {
      auto pieces = zero_pieces;
      pieces[a] = gens.lambda(i) * (p.q[a] / (2.0 * bs.block(a).irrep_dim));
      derivatives.emplace_back(bs.from_block_basis(bs.assemble(pieces)));
    }
  }

  std::vector<HermitianOperator> slds;
  slds.reserve(derivatives.size());
  for (const auto& d : derivatives) slds.push_back(sld_numeric(rho, d, pinv_tol));
  const auto count = static_cast<Index>(slds.size());
  out.matrix = RealMatrix::Zero(count, count);
  for (Index k = 0; k < count; ++k) {
    for (Index l = k; l < count; ++l) {
      const HermitianOperator jordan = jordan_product(slds[static_cast<std::size_t>(k)], slds[static_cast<std::size_t>(l)]);
      out.matrix(k, l) = trace_product(rho.matrix(), jordan.matrix()).real();
      out.matrix(l, k) = out.matrix(k, l);
    }
  }
  return out;
}

/// ∂β H⁻¹ ∂βᵀ, with the Moore-Penrose inverse when H is singular.
inline double qcrb_value(const RealVector& grad, const QfiMatrix& h) {
  if (grad.size() != h.matrix.rows()) throw Error(ErrorKind::ShapeMismatch, "qcrb_value: gradient length mismatch");
  if (grad.size() == 0) return 0.0;
  return std::max(0.0, grad.dot(pinv_symmetric(h.matrix) * grad));
}

struct IdentityReport {
  std::size_t trials = 0;
  double max_residual = 0.0;            // max |LHS − (ΔY)²| over both LHS routes
  double max_residual_closed = 0.0;
  double max_residual_numeric = 0.0;
  double max_qfi_discrepancy = 0.0;     // max ‖H_closed − H_numeric‖_max
  double max_expectation_gap = 0.0;     // max |⟨Y⟩ − ⟨X⟩|
};

/// Both sides of ∂β H⁻¹ ∂βᵀ = (ΔY)² for one symmetric state.
struct IdentitySample {
  double variance_y = 0.0;
  double qcrb_closed = 0.0;
  double qcrb_numeric = 0.0;
  double qfi_discrepancy = 0.0;
  double expectation_gap = 0.0;
};

inline IdentitySample identity_sample(const HermitianOperator& x, const HermitianOperator& y, const BlockStructure& bs,
                            const SymmetricStateParams& p) {
  const DensityMatrix rho = build_state(bs, p);
  const BlockObservable bo = block_observable(y, bs);
  const RealVector grad = grad_beta(bo, bs, p);
  const QfiMatrix closed = qfi_closed_form(bs, p);
  const QfiMatrix numeric = qfi_numeric(bs, p);
  IdentitySample s;
  s.variance_y = variance(rho, y);
  s.qcrb_closed = qcrb_value(grad, closed);
  s.qcrb_numeric = qcrb_value(grad, numeric);
  s.qfi_discrepancy = max_norm(RealMatrix(closed.matrix - numeric.matrix));
  s.expectation_gap = std::abs(expectation(rho, y) - expectation(rho, x));
  return s;
}

inline void accumulate(IdentityReport& report, const IdentitySample& s) {
  ++report.trials;
  report.max_residual_closed = std::max(report.max_residual_closed, std::abs(s.qcrb_closed - s.variance_y));
  report.max_residual_numeric = std::max(report.max_residual_numeric, std::abs(s.qcrb_numeric - s.variance_y));
  report.max_residual = std::max(report.max_residual_closed, report.max_residual_numeric);
  report.max_qfi_discrepancy = std::max(report.max_qfi_discrepancy, s.qfi_discrepancy);
  report.max_expectation_gap = std::max(report.max_expectation_gap, s.expectation_gap);
}

/// Draws `trials` random symmetric states (stream t seeded by mix_seed(seed, t))
/// and checks the identity for the fixed observable of `task`.
inline IdentityReport verify_variance_identity(const EstimationTask& task, const BlockStructure& bs, std::uint64_t seed, std::size_t trials) {
  const HermitianOperator y = twirl_dense(task.x, task.rep);
  IdentityReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    accumulate(report, identity_sample(task.x, y, bs, random_symmetric_state(bs, mix_seed(seed, t))));
  }
  return report;
}

inline IdentityReport verify_variance_identity(const EstimationTask& task, std::uint64_t seed, std::size_t trials) {
  const BlockStructure bs = decompose_commutant(task.rep, mix_seed(seed, 0xB10C));
  return verify_variance_identity(task, bs, seed, trials);
}

/// max(1, ⌈varY/ε⌉). Ratios within 1e-12 (relative) of an integer are
/// taken as that integer so decimal inputs such as 0.07/0.01 give 7.
inline std::uint64_t min_samples(double var_y, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidPrecision, "min_samples: precision must be positive");
  }
  if (!(var_y >= 0.0) || !std::isfinite(var_y)) {
    throw Error(ErrorKind::InvalidArgument, "min_samples: variance must be finite and non-negative");
  }
  const double ratio = var_y / epsilon;
  const double nearest = std::round(ratio);
  const double snapped = std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, nearest) ? nearest : std::ceil(ratio);
  if (snapped >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorKind::InvalidPrecision, "min_samples: sample count overflows");
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(snapped));
}

}  // namespace symtwirl
