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
 * Shot-level simulation of projective measurements and the sample-mean
 * estimator, used to compare measuring X directly against measuring its
 * twirl Y = T(X).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "symtwirl/groups.hpp"
#include "symtwirl/linalg.hpp"
#include "symtwirl/rng.hpp"
#include "symtwirl/twirl.hpp"

namespace symtwirl {

/// Distinct outcome values (ascending) and their Born probabilities.
struct MeasurementPlan {
  std::vector<double> outcomes;
  std::vector<double> probabilities;
};

struct RunRecord {
  std::string observable_tag;
  std::uint64_t shots = 0;
  double estimate = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> outcomes;       // histogram support, plan order
  std::vector<std::uint64_t> counts;  // histogram counts, sum = shots

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Eigenvalues closer than 1e-9·‖O‖_max are merged into a single outcome
/// (value = cluster mean); p_y sums ⟨v|ρ|v⟩ over the cluster.
inline MeasurementPlan plan_measurement(const DensityMatrix& rho, const HermitianOperator& o) {
  require_same_dim(rho.dim(), o.dim(), "plan_measurement");
  const EigenDecomposition eig = eig_hermitian(o);
  const double gap = tol::kMergeGap * max_norm(o.matrix());
  MeasurementPlan plan;
  std::vector<double> sums;
  std::vector<int> sizes;
  double previous = 0.0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double value = eig.eigenvalues(i);
    const auto v = eig.eigenvectors.col(i);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    if (i == 0 || value - previous > gap) {
      sums.push_back(0.0);
      sizes.push_back(0);
      plan.probabilities.push_back(0.0);
    }
    sums.back() += value;
    ++sizes.back();
    plan.probabilities.back() += weight;
    previous = value;
  }
  double total = 0.0;
  for (std::size_t y = 0; y < sums.size(); ++y) {
    plan.outcomes.push_back(sums[y] / sizes[y]);
    if (plan.probabilities[y] < -1e-12) {
      throw Error(ErrorKind::InvalidMatrix, "plan_measurement: negative outcome probability");
    }
    plan.probabilities[y] = std::max(0.0, plan.probabilities[y]);
    total += plan.probabilities[y];
  }
  for (double& p : plan.probabilities) p /= total;
  return plan;
}

/// Theoretical mean and variance of a single shot.
inline double plan_mean(const MeasurementPlan& plan) {
  double m = 0.0;
  for (std::size_t y = 0; y < plan.outcomes.size(); ++y) m += plan.probabilities[y] * plan.outcomes[y];
  return m;
}

inline double plan_variance(const MeasurementPlan& plan) {
  const double m = plan_mean(plan);
  double v = 0.0;
  for (std::size_t y = 0; y < plan.outcomes.size(); ++y) v += plan.probabilities[y] * (plan.outcomes[y] - m) * (plan.outcomes[y] - m);
  return v;
}

/// M independent shots by inverse CDF over the plan's outcome order.
inline RunRecord simulate(const MeasurementPlan& plan, std::uint64_t shots, std::uint64_t seed, std::string tag = "O") {
  if (shots == 0) throw Error(ErrorKind::InvalidShots, "simulate: at least one shot is required");
  if (plan.outcomes.empty()) throw Error(ErrorKind::InvalidArgument, "simulate: empty plan");
  std::vector<double> cdf(plan.probabilities.size());
  double running = 0.0;
  for (std::size_t y = 0; y < cdf.size(); ++y) {
    running += plan.probabilities[y];
    cdf[y] = running;
  }
  RunRecord record{std::move(tag), shots, 0.0, seed, plan.outcomes, std::vector<std::uint64_t>(plan.outcomes.size(), 0)};
  Rng rng(seed);
  const std::size_t last_possible = [&] {
    std::size_t y = cdf.size() - 1;
    while (y > 0 && plan.probabilities[y] <= 0.0) --y;
    return y;
  }();
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    auto y = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++record.counts[std::min(y, last_possible)];
  }
  double sum = 0.0;
  for (std::size_t y = 0; y < record.counts.size(); ++y) sum += record.outcomes[y] * static_cast<double>(record.counts[y]);
  record.estimate = sum / static_cast<double>(shots);
  return record;
}

struct StrategyStats {
  double shot_variance = 0.0;      // (ΔO)²
  double theory_variance = 0.0;    // (ΔO)²/M
  double empirical_variance = 0.0; // unbiased sample variance of β̂ over repetitions
  double empirical_mean = 0.0;
  double mean_z = 0.0;             // (mean − ⟨O⟩) / √(theory/reps)
  bool mean_flagged = false;       // |mean_z| > 6
};

struct ComparisonRecord {
  std::uint64_t shots = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  double expectation = 0.0;  // ⟨X⟩_ρ = ⟨Y⟩_ρ
  StrategyStats x;
  StrategyStats y;
};

namespace detail {

inline StrategyStats run_strategy(const MeasurementPlan& plan, double expectation, std::uint64_t shots, std::uint64_t reps,
                                  std::uint64_t seed, std::uint64_t stream, const std::string& tag) {
  StrategyStats stats;
  stats.shot_variance = plan_variance(plan);
  stats.theory_variance = stats.shot_variance / static_cast<double>(shots);
  std::vector<double> estimates(reps);
  for (std::uint64_t r = 0; r < reps; ++r) {
    estimates[r] = simulate(plan, shots, mix_seed(seed, 2 * r + stream), tag).estimate;
  }
  double sum = 0.0;
  for (double e : estimates) sum += e;
  stats.empirical_mean = sum / static_cast<double>(reps);
  double sq = 0.0;
  for (double e : estimates) sq += (e - stats.empirical_mean) * (e - stats.empirical_mean);
  stats.empirical_variance = reps > 1 ? sq / static_cast<double>(reps - 1) : 0.0;
  const double se = std::sqrt(stats.theory_variance / static_cast<double>(reps));
  stats.mean_z = se > 0.0 ? (stats.empirical_mean - expectation) / se : 0.0;
  stats.mean_flagged = std::abs(stats.mean_z) > 6.0;
  return stats;
}

}  // namespace detail

/// Measures X and Y = T(X) on `reps` independent batches of M shots each.
/// Repetition r uses stream mix_seed(seed, 2r) for X and 2r+1 for Y.
inline ComparisonRecord strategy_comparison(const DensityMatrix& rho, const HermitianOperator& x, const GroupRep& rep,
                                            std::uint64_t shots, std::uint64_t reps, std::uint64_t seed,
                                            TwirlOptions options = {}) {
  if (!verify_symmetry(rho, rep, tol::kSymmetry)) {
    throw Error(ErrorKind::NotSymmetric, "strategy_comparison: state is not invariant under the representation");
  }
  if (shots == 0) throw Error(ErrorKind::InvalidShots, "strategy_comparison: at least one shot is required");
  if (reps == 0) throw Error(ErrorKind::InvalidArgument, "strategy_comparison: at least one repetition is required");
  const HermitianOperator y = twirl_dense(x, rep, options);
  ComparisonRecord out;
  out.shots = shots;
  out.reps = reps;
  out.seed = seed;
  out.expectation = expectation(rho, x);
  out.x = detail::run_strategy(plan_measurement(rho, x), out.expectation, shots, reps, seed, 0, "X");
  out.y = detail::run_strategy(plan_measurement(rho, y), out.expectation, shots, reps, seed, 1, "Y");
  return out;
}

/// Empirical-vs-theory check on M·Var[β̂] against (ΔO)²: 15% relative when
/// (ΔO)² > 0.01, otherwise 1e-3 absolute.
inline bool variance_consistent(const StrategyStats& s, std::uint64_t shots) {
  const double scaled = s.empirical_variance * static_cast<double>(shots);
  if (s.shot_variance > 0.01) return std::abs(scaled - s.shot_variance) <= 0.15 * s.shot_variance;
  return std::abs(scaled - s.shot_variance) <= 1e-3;
}

}  // namespace symtwirl
