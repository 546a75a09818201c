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

// A qubit state diagonal in the computational basis is invariant under
// {I, σz}. Twirling X = σx + σz over that group drops the σx part, which
// carries no information about ⟨X⟩ but adds shot noise.

#include <cstdio>

#include "symtwirl/symtwirl.hpp"

int main() {
  using namespace symtwirl;

  const GroupRep rep = z2_qubit_rep();
  const BlockStructure bs = decompose_commutant(rep, 7);
  const SymmetricStateParams params{{0.8, 0.2}, {RealVector(), RealVector()}};
  const DensityMatrix rho = build_state(bs, params);

  const HermitianOperator x(pauli_x() + pauli_z());
  const HermitianOperator y = twirl_dense(x, rep);

  const BlockObservable bo = block_observable(y, bs);
  const double bound = qcrb_value(grad_beta(bo, bs, params), qfi_closed_form(bs, params));

  std::printf("<X> = %.6f   <Y> = %.6f\n", expectation(rho, x), expectation(rho, y));
  std::printf("var X = %.6f   var Y = %.6f   QCRB = %.6f\n", variance(rho, x), variance(rho, y), bound);
  std::printf("copies for variance 0.01: X %llu, Y %llu\n",
              static_cast<unsigned long long>(min_samples(variance(rho, x), 0.01)),
              static_cast<unsigned long long>(min_samples(variance(rho, y), 0.01)));
  return 0;
}
