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
 * The two worked applications and their supporting arithmetic.
 *
 * Translation: X = ⊗(σx+σz) on translation-invariant states has
 * (ΔX)² ∈ [2ⁿ−1, 2ⁿ] while its twirl has (ΔY)² ≤ 1.
 *
 * Permutation: a Pauli string on GHZ has (ΔX)² = 1 and
 * (ΔY)² = 1/C(n,|k|), outside two zero-variance classes.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "symtwirl/commutant.hpp"
#include "symtwirl/groups.hpp"
#include "symtwirl/linalg.hpp"
#include "symtwirl/metrology.hpp"
#include "symtwirl/rng.hpp"
#include "symtwirl/sampler.hpp"
#include "symtwirl/twirl.hpp"

namespace symtwirl {

inline constexpr int kMaxApp1Qubits = 10;
inline constexpr int kMaxApp2Qubits = 13;
inline constexpr int kMaxCensusQubits = 14;
inline constexpr int kMaxApp2DenseCheckQubits = 7;
inline constexpr int kApp2DenseCheckStrings = 30;
inline constexpr int kMaxSimulateQubits = 8;

// ---------------------------------------------------------------------------
// Exact arithmetic
// ---------------------------------------------------------------------------

/// Non-negative fraction in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "Rational: zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// C(n, m) in exact integer arithmetic (n ≤ 62).
inline std::uint64_t binomial(int n, int m) {
  if (n < 0 || n > 62) throw Error(ErrorKind::UnsupportedSize, "binomial: n must lie in [0, 62]");
  if (m < 0 || m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t out = 1;
  for (int i = 1; i <= m; ++i) out = out * static_cast<std::uint64_t>(n - m + i) / static_cast<std::uint64_t>(i);
  return out;
}

// ---------------------------------------------------------------------------
// Permutation application
// ---------------------------------------------------------------------------

struct GhzVariances {
  Rational var_x;
  Rational var_y;

  /// varX/varY, absent for the zero-variance classes.
  std::optional<double> ratio() const {
    if (var_y.num == 0) return std::nullopt;
    return var_x.to_double() / var_y.to_double();
  }
};

inline void require_odd(int n, const char* where) {
  if (n < 1 || n > 62) throw Error(ErrorKind::UnsupportedSize, std::string(where) + ": n out of range");
  if (n % 2 == 0) throw Error(ErrorKind::OddOnly, std::string(where) + ": n must be odd");
}

/// Closed form by class: zero when k is all-equal and |l| is even.
inline GhzVariances ghz_class_variances(int n, int k_weight, int l_weight) {
  require_odd(n, "ghz_class_variances");
  if (k_weight < 0 || k_weight > n || l_weight < 0 || l_weight > n) {
    throw Error(ErrorKind::InvalidArgument, "ghz_class_variances: weight out of range");
  }
  const bool all_equal = k_weight == 0 || k_weight == n;
  if (all_equal && l_weight % 2 == 0) return {Rational{0, 1}, Rational{0, 1}};
  return {Rational{1, 1}, Rational::make(1, binomial(n, k_weight))};
}

inline GhzVariances ghz_pauli_variances(int n, const PauliString& p) {
  require_odd(n, "ghz_pauli_variances");
  if (p.qubits() != n) throw Error(ErrorKind::ShapeMismatch, "ghz_pauli_variances: string length differs from n");
  return ghz_class_variances(n, p.x_weight(), p.z_weight());
}

/// Open window ((1−δ)n/2, (1+δ)n/2) on |k|. Endpoints within 1e-9 of an
/// integer are taken as that integer and excluded.
struct TypicalityWindow {
  int n = 0;
  double delta = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  static TypicalityWindow make(int n, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidDelta, "TypicalityWindow: delta must lie in (0, 1)");
    if (n < 1) throw Error(ErrorKind::UnsupportedSize, "TypicalityWindow: n must be positive");
    return {n, delta, (1.0 - delta) * n / 2.0, (1.0 + delta) * n / 2.0};
  }

  int first() const {
    const double r = std::round(lower);
    return static_cast<int>(std::abs(lower - r) <= 1e-9 ? r : std::floor(lower)) + 1;
  }
  int last() const {
    const double r = std::round(upper);
    return static_cast<int>(std::abs(upper - r) <= 1e-9 ? r : std::ceil(upper)) - 1;
  }
  bool contains(int m) const { return m >= first() && m <= last(); }
};

struct CensusRecord {
  int n = 0;
  double delta = 0.0;
  int first_weight = 0;
  int last_weight = -1;
  std::uint64_t typical_count = 0;
  std::uint64_t total = 0;  // 4ⁿ
  double bound = 0.0;       // 4ⁿ(1 − 1/(nδ²))
  bool holds = false;

  friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

inline CensusRecord pauli_census(int n, double delta) {
  const auto window = TypicalityWindow::make(n, delta);
  if (n > kMaxCensusQubits) throw Error(ErrorKind::UnsupportedSize, "pauli_census: n exceeds 14");
  CensusRecord out;
  out.n = n;
  out.delta = delta;
  out.first_weight = window.first();
  out.last_weight = window.last();
  const std::uint64_t strings_per_weight = std::uint64_t{1} << n;
  for (int m = std::max(0, out.first_weight); m <= std::min(n, out.last_weight); ++m) {
    out.typical_count += strings_per_weight * binomial(n, m);
  }
  out.total = std::uint64_t{1} << (2 * n);
  out.bound = static_cast<double>(out.total) * (1.0 - 1.0 / (n * delta * delta));
  out.holds = static_cast<double>(out.typical_count) >= out.bound;
  return out;
}

/// √(2/(nπ(1−δ²)))·[4/((1−δ)^{1−δ}(1+δ)^{1+δ})]^{n/2}.
inline double ratio_bound(int n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidDelta, "ratio_bound: delta must lie in (0, 1)");
  if (n < 1) throw Error(ErrorKind::UnsupportedSize, "ratio_bound: n must be positive");
  const double base = 4.0 / (std::pow(1.0 - delta, 1.0 - delta) * std::pow(1.0 + delta, 1.0 + delta));
  return std::sqrt(2.0 / (n * std::numbers::pi * (1.0 - delta * delta))) * std::pow(base, n / 2.0);
}

struct App2Row {
  int k_weight = 0;
  int l_parity = 0;  // 0 even, 1 odd
  GhzVariances variances;

  friend bool operator==(const App2Row& a, const App2Row& b) {
    return a.k_weight == b.k_weight && a.l_parity == b.l_parity && a.variances.var_x == b.variances.var_x &&
           a.variances.var_y == b.variances.var_y;
  }
};

struct DenseCheck {
  std::string pauli;
  double var_x_dense = 0.0;
  double var_y_dense = 0.0;
  Rational var_x;
  Rational var_y;

  friend bool operator==(const DenseCheck&, const DenseCheck&) = default;
};

struct App2Report {
  int n = 0;
  double delta = 0.0;
  std::vector<App2Row> rows;
  CensusRecord census;
  double ratio_bound_value = 0.0;
  std::uint64_t min_typical_binomial = 0;  // 0 when the window holds no weight
  bool ratio_bound_below_min = false;
  std::vector<DenseCheck> dense_checks;
  double max_dense_deviation = 0.0;
  bool ok = false;  // census holds and every dense check within 1e-9

  friend bool operator==(const App2Report&, const App2Report&) = default;
};

/// Dense variances of P and of T(P) on GHZ, with T(P) materialized from
/// the class sum (the permutation twirl itself for n ≤ 7).
inline DenseCheck ghz_dense_check(const PauliString& p) {
  const int n = p.qubits();
  const DensityMatrix ghz = DensityMatrix::pure(ghz_state(n));
  const GhzVariances closed = ghz_pauli_variances(n, p);
  return {p.to_string(), variance(ghz, pauli_matrix(p)), variance(ghz, sym_pauli_dense(twirl_sn_pauli(p))), closed.var_x,
          closed.var_y};
}

inline App2Report run_app2(int n, double delta) {
  require_odd(n, "run_app2");
  if (n < 3 || n > kMaxApp2Qubits) throw Error(ErrorKind::UnsupportedSize, "run_app2: n must lie in [3, 13]");
  App2Report out;
  out.n = n;
  out.delta = delta;
  out.census = pauli_census(n, delta);
  out.ratio_bound_value = ratio_bound(n, delta);
  for (int k = 0; k <= n; ++k) {
    for (int parity = 0; parity < 2; ++parity) out.rows.push_back({k, parity, ghz_class_variances(n, k, parity)});
  }
  const TypicalityWindow window = TypicalityWindow::make(n, delta);
  for (int m = std::max(0, window.first()); m <= std::min(n, window.last()); ++m) {
    const std::uint64_t c = binomial(n, m);
    if (out.min_typical_binomial == 0 || c < out.min_typical_binomial) out.min_typical_binomial = c;
  }
  out.ratio_bound_below_min =
      out.min_typical_binomial > 0 && out.ratio_bound_value <= static_cast<double>(out.min_typical_binomial);

  if (n <= kMaxApp2DenseCheckQubits) {
    Rng rng(mix_seed(0x5EED'A002ULL, static_cast<std::uint64_t>(n)));
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (int s = 0; s < kApp2DenseCheckStrings; ++s) {
      const std::uint64_t k = rng.next() & mask;
      const std::uint64_t l = rng.next() & mask;
      DenseCheck check = ghz_dense_check(PauliString(n, k, l));
      out.max_dense_deviation = std::max({out.max_dense_deviation, std::abs(check.var_x_dense - check.var_x.to_double()),
                                          std::abs(check.var_y_dense - check.var_y.to_double())});
      out.dense_checks.push_back(std::move(check));
    }
  }
  out.ok = out.census.holds && out.max_dense_deviation <= 1e-9;
  return out;
}

// ---------------------------------------------------------------------------
// Translation application
// ---------------------------------------------------------------------------

/// σx + σz, the single-qubit factor of the default observable.
inline Matrix app1_default_factor() { return pauli_x() + pauli_z(); }

inline Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

/// First column of the circulant ρ = Σ_j p_j |f_j⟩⟨f_j|:
/// c(m) = Σ_j p_j e^{2πijm/d}/d, with ρ(a, b) = c(a − b mod d).
inline std::vector<complex> fourier_mixture_column(int n, const std::vector<double>& weights) {
  require_qubits(n, kMaxApp1Qubits, "fourier_mixture");
  const Index dim = Index{1} << n;
  if (weights.size() != static_cast<std::size_t>(dim)) throw Error(ErrorKind::ShapeMismatch, "fourier_mixture: weight count");
  std::vector<complex> roots(static_cast<std::size_t>(dim));
  for (Index m = 0; m < dim; ++m) roots[static_cast<std::size_t>(m)] = std::polar(1.0, 2.0 * std::numbers::pi * m / dim);
  std::vector<complex> column(static_cast<std::size_t>(dim), complex(0.0, 0.0));
  for (Index m = 0; m < dim; ++m) {
    complex c(0.0, 0.0);
    for (Index j = 0; j < dim; ++j) c += weights[static_cast<std::size_t>(j)] * roots[static_cast<std::size_t>((j * m) % dim)];
    column[static_cast<std::size_t>(m)] = c / static_cast<double>(dim);
  }
  return column;
}

/// tr(ρA) for circulant ρ given by its first column.
inline complex circulant_trace(const std::vector<complex>& column, const Matrix& a) {
  const Index dim = a.rows();
  complex out(0.0, 0.0);
  for (Index b = 0; b < dim; ++b) {
    for (Index r = 0; r < dim; ++r) out += column[static_cast<std::size_t>((r - b + dim) % dim)] * a(b, r);
  }
  return out;
}

inline DensityMatrix fourier_mixture(int n, const std::vector<double>& weights) {
  const std::vector<complex> column = fourier_mixture_column(n, weights);
  const Index dim = static_cast<Index>(column.size());
  Matrix rho(dim, dim);
  for (Index a = 0; a < dim; ++a) {
    for (Index b = 0; b < dim; ++b) rho(a, b) = column[static_cast<std::size_t>((a - b + dim) % dim)];
  }
  return DensityMatrix(rho);
}

/// Flat Dirichlet over 2ⁿ weights (normalized exponentials).
inline std::vector<double> dirichlet_weights(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(count);
  double total = 0.0;
  for (double& x : w) total += (x = rng.exponential());
  for (double& x : w) x /= total;
  return w;
}

struct App1Trial {
  std::string kind;  // "pure_f0", "uniform" or "dirichlet"
  double var_x = 0.0;
  double var_y = 0.0;
  std::optional<double> gap_residual;  // n ≤ 5 only
  bool bounds_ok = true;

  friend bool operator==(const App1Trial&, const App1Trial&) = default;
};

struct App1Report {
  int n = 0;
  std::size_t trials = 0;  // random draws; two boundary records precede them
  std::uint64_t seed = 0;
  bool default_observable = true;
  std::vector<App1Trial> records;
  double min_var_x = 0.0;
  double max_var_x = 0.0;
  double max_var_y = 0.0;
  double max_gap_residual = 0.0;
  bool bounds_ok = true;
  bool gap_ok = true;

  friend bool operator==(const App1Report&, const App1Report&) = default;
};

inline constexpr double kApp1Tolerance = 1e-7;

namespace detail {

struct App1Context {
  int n;
  Matrix x;
  Matrix x2;
  FourierDiagonal y;
  std::optional<Matrix> x_fourier;
};

inline App1Trial app1_trial(const App1Context& ctx, const std::string& kind, const std::vector<double>& p,
                            bool check_bounds) {
  const std::vector<complex> rho = fourier_mixture_column(ctx.n, p);
  App1Trial t;
  t.kind = kind;
  const double mean_x = circulant_trace(rho, ctx.x).real();
  t.var_x = circulant_trace(rho, ctx.x2).real() - mean_x * mean_x;
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double yj = ctx.y.diag(static_cast<Index>(j));
    m1 += p[j] * yj;
    m2 += p[j] * yj * yj;
  }
  t.var_y = m2 - m1 * m1;
  if (ctx.x_fourier) {
    const Matrix& xf = *ctx.x_fourier;
    double gap = 0.0;
    for (Index j = 0; j < xf.rows(); ++j) {
      double off = 0.0;
      for (Index k = 0; k < xf.cols(); ++k) {
        if (k != j) off += std::norm(xf(j, k));
      }
      gap += p[static_cast<std::size_t>(j)] * off;
    }
    t.gap_residual = std::abs((t.var_x - t.var_y) - gap);
  }
  if (check_bounds) {
    const double d = std::ldexp(1.0, ctx.n);
    t.bounds_ok = t.var_x >= d - 1.0 - kApp1Tolerance && t.var_x <= d + kApp1Tolerance && t.var_y >= -1e-9 &&
                  t.var_y <= 1.0 + kApp1Tolerance;
  }
  return t;
}

}  // namespace detail

/// Boundary records (pure |f_0⟩, uniform mixture) followed by `trials`
/// Dirichlet draws, draw t seeded by mix_seed(seed, t). Custom factors get
/// the gap identity only.
inline App1Report run_app1(int n, std::size_t trials, std::uint64_t seed, std::optional<std::vector<Matrix>> factors = {}) {
  if (n < 2 || n > kMaxApp1Qubits) throw Error(ErrorKind::UnsupportedSize, "run_app1: n must lie in [2, 10]");
  App1Report out;
  out.n = n;
  out.trials = trials;
  out.seed = seed;
  out.default_observable = !factors.has_value();
  std::vector<Matrix> f = factors.value_or(std::vector<Matrix>(static_cast<std::size_t>(n), app1_default_factor()));
  const FourierDiagonal y = twirl_translation_product(n, f);
  std::vector<Matrix> squares;
  for (const auto& a : f) squares.push_back(a * a);
  detail::App1Context ctx{n, kron_all(f), kron_all(squares), y, std::nullopt};
  if (n <= 5) {
    const Matrix fb = fourier_basis(n);
    ctx.x_fourier = fb.adjoint() * ctx.x * fb;
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> pure(dim, 0.0);
  pure[0] = 1.0;
  out.records.push_back(detail::app1_trial(ctx, "pure_f0", pure, out.default_observable));
  out.records.push_back(detail::app1_trial(ctx, "uniform", std::vector<double>(dim, 1.0 / static_cast<double>(dim)),
                                           out.default_observable));
  for (std::size_t t = 0; t < trials; ++t) {
    out.records.push_back(detail::app1_trial(ctx, "dirichlet", dirichlet_weights(dim, mix_seed(seed, t)), out.default_observable));
  }
  out.min_var_x = out.records.front().var_x;
  out.max_var_x = out.records.front().var_x;
  for (const auto& r : out.records) {
    out.min_var_x = std::min(out.min_var_x, r.var_x);
    out.max_var_x = std::max(out.max_var_x, r.var_x);
    out.max_var_y = std::max(out.max_var_y, r.var_y);
    if (r.gap_residual) out.max_gap_residual = std::max(out.max_gap_residual, *r.gap_residual);
    out.bounds_ok = out.bounds_ok && r.bounds_ok;
  }
  out.gap_ok = out.max_gap_residual <= kApp1Tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

enum class SuiteGroup { Z2, Translation, Permutation };

inline std::string to_string(SuiteGroup g) {
  switch (g) {
    case SuiteGroup::Z2: return "z2";
    case SuiteGroup::Translation: return "translation";
    case SuiteGroup::Permutation: return "permutation";
  }
  return "unknown";
}

inline SuiteGroup parse_suite_group(const std::string& text) {
  if (text == "z2") return SuiteGroup::Z2;
  if (text == "translation") return SuiteGroup::Translation;
  if (text == "permutation") return SuiteGroup::Permutation;
  throw Error(ErrorKind::InvalidArgument, "unknown group '" + text + "'");
}

inline GroupRep suite_rep(SuiteGroup g, int n) {
  switch (g) {
    case SuiteGroup::Z2: return z2_qubit_rep();
    case SuiteGroup::Translation: return translation_rep(n);
    case SuiteGroup::Permutation: return permutation_rep(n);
  }
  throw Error(ErrorKind::InvalidArgument, "suite_rep: unknown group");
}

struct QcrbSuiteReport {
  std::string group;
  int n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<Block> blocks;
  IdentityReport identity;
  bool pass = false;  // both residuals and the QFI discrepancy within tol
};

/// Trial t: symmetric state from mix_seed(seed, 2t), random Hermitian X
/// from mix_seed(seed, 2t+1).
inline QcrbSuiteReport run_qcrb_suite(SuiteGroup group, int n, std::size_t trials, std::uint64_t seed, double tolerance) {
  if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "run_qcrb_suite: tolerance must be positive");
  const GroupRep rep = suite_rep(group, n);
  const BlockStructure bs = decompose_commutant(rep, mix_seed(seed, 0xB10C));
  QcrbSuiteReport out;
  out.group = to_string(group);
  out.n = group == SuiteGroup::Z2 ? 1 : n;
  out.trials = trials;
  out.seed = seed;
  out.tol = tolerance;
  out.blocks = bs.blocks();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, 2 * t + 1));
    const HermitianOperator x(random_hermitian(rep.dim(), rng));
    const HermitianOperator y = twirl_dense(x, rep);
    accumulate(out.identity, identity_sample(x, y, bs, random_symmetric_state(bs, mix_seed(seed, 2 * t))));
  }
  out.pass = out.identity.max_residual <= tolerance && out.identity.max_qfi_discrepancy <= tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// Sampling scenario
// ---------------------------------------------------------------------------

struct SimulateReport {
  int n = 0;
  std::vector<double> fourier_weights;
  ComparisonRecord comparison;
  bool x_consistent = false;
  bool y_consistent = false;
  bool y_not_worse = false;  // empirical Var(Y) ≤ empirical Var(X)
  std::uint64_t min_samples_x = 0;
  std::uint64_t min_samples_y = 0;
  double epsilon = 0.0;
};

/// X = ⊗(σx+σz) against its translation twirl on a Dirichlet Fourier
/// mixture drawn from mix_seed(seed, 0x57A7E).
inline SimulateReport run_simulate(int n, std::uint64_t shots, std::uint64_t reps, std::uint64_t seed, double epsilon = 0.01,
                                   TwirlOptions options = {}) {
  if (n < 2 || n > kMaxSimulateQubits) throw Error(ErrorKind::UnsupportedSize, "run_simulate: n must lie in [2, 8]");
  SimulateReport out;
  out.n = n;
  out.epsilon = epsilon;
  out.fourier_weights = dirichlet_weights(std::size_t{1} << n, mix_seed(seed, 0x57A7E));
  const DensityMatrix rho = fourier_mixture(n, out.fourier_weights);
  const HermitianOperator x(kron_all(std::vector<Matrix>(static_cast<std::size_t>(n), app1_default_factor())));
  out.comparison = strategy_comparison(rho, x, translation_rep(n), shots, reps, seed, options);
  out.x_consistent = variance_consistent(out.comparison.x, shots);
  out.y_consistent = variance_consistent(out.comparison.y, shots);
  out.y_not_worse = out.comparison.y.empirical_variance <= out.comparison.x.empirical_variance;
  out.min_samples_x = min_samples(out.comparison.x.shot_variance, epsilon);
  out.min_samples_y = min_samples(out.comparison.y.shot_variance, epsilon);
  return out;
}

}  // namespace symtwirl
