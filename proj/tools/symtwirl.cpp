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

// symtwirl command-line front end.
//
// Exit codes: 0 success, 2 a reported bound or identity check failed,
// 3 bad input (argument parsing or a precondition error).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symtwirl/log.hpp"
#include "symtwirl/report_io.hpp"
#include "symtwirl/symtwirl.hpp"

namespace {

using namespace symtwirl;

constexpr int kExitOk = 0;
constexpr int kExitBound = 2;
constexpr int kExitInput = 3;

struct Output {
  std::string path;
  std::string format = "json";
};

void emit(const Output& out, const std::string& text) {
  if (out.path.empty() || out.path == "-") {
    std::cout << text;
    return;
  }
  write_atomic(out.path, text);
  log::info("wrote " + out.path);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

int finish(bool ok, const std::string& what) {
  if (ok) return kExitOk;
  log::error(what);
  return kExitBound;
}

// a·I + b·σx + c·σy + d·σz from four reals.
Matrix factor_from_coefficients(const std::vector<double>& c, std::size_t at) {
  return c[at] * pauli_i() + c[at + 1] * pauli_x() + c[at + 2] * pauli_y() + c[at + 3] * pauli_z();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-twirled observables: variance, Fisher information and sample counts"};
  app.require_subcommand(1);
  bool unsafe_size = false;
  app.add_flag("--unsafe-size", unsafe_size, "Skip the dense-twirl work guard");

  // app1
  int a1_n = 0;
  std::size_t a1_trials = 100;
  std::uint64_t a1_seed = 0;
  Output a1_out;
  std::vector<double> a1_factor;
  auto* app1 = app.add_subcommand("app1", "Translation-invariant states with X = (σx+σz)^⊗n");
  app1->add_option("--n", a1_n, "Qubit count (2..10)")->required();
  app1->add_option("--trials", a1_trials, "Random Dirichlet states");
  app1->add_option("--seed", a1_seed, "Master seed");
  app1->add_option("--out", a1_out.path, "Output path (stdout if omitted)");
  app1->add_option("--format", a1_out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app1->add_option("--factor", a1_factor,
                   "Custom factor a,b,c,d = aI+bX+cY+dZ; four values for all qubits or 4n for one per qubit")
      ->delimiter(',');

  // app2
  int a2_n = 0;
  double a2_delta = 0.5;
  Output a2_out;
  auto* app2 = app.add_subcommand("app2", "Pauli strings on GHZ under qubit permutations");
  app2->add_option("--n", a2_n, "Odd qubit count (3..13)")->required();
  app2->add_option("--delta", a2_delta, "Typicality width in (0, 1)");
  app2->add_option("--out", a2_out.path, "Output path (stdout if omitted)");
  app2->add_option("--format", a2_out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // qcrb
  std::string q_group;
  int q_n = 3;
  std::size_t q_trials = 100;
  std::uint64_t q_seed = 0;
  double q_tol = 1e-6;
  Output q_out;
  auto* qcrb = app.add_subcommand("qcrb", "Check the Cramér-Rao identity on random symmetric states");
  qcrb->add_option("--group", q_group, "z2, translation or permutation")
      ->required()
      ->check(CLI::IsMember({"z2", "translation", "permutation"}));
  qcrb->add_option("--n", q_n, "Qubit count (ignored for z2)");
  qcrb->add_option("--trials", q_trials, "Random (state, observable) pairs");
  qcrb->add_option("--seed", q_seed, "Master seed");
  qcrb->add_option("--tol", q_tol, "Pass threshold");
  qcrb->add_option("--out", q_out.path, "Output path (stdout if omitted)");

  // twirl
  std::string t_pauli;
  std::string t_group = "permutation";
  Output t_out;
  auto* twirl = app.add_subcommand("twirl", "Permutation twirl of a Pauli string");
  twirl->add_option("--pauli", t_pauli, "Pauli string over IXYZ")->required();
  twirl->add_option("--group", t_group, "Group (permutation)")->check(CLI::IsMember({"permutation"}));
  twirl->add_option("--out", t_out.path, "Output path (stdout if omitted)");

  // simulate
  int s_n = 4;
  std::uint64_t s_shots = 1000;
  std::uint64_t s_reps = 200;
  std::uint64_t s_seed = 0;
  double s_epsilon = 0.01;
  Output s_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Shot-noise comparison of measuring X against its twirl");
  simulate_cmd->add_option("--n", s_n, "Qubit count (2..8)");
  simulate_cmd->add_option("--shots", s_shots, "Shots per estimate (M)");
  simulate_cmd->add_option("--reps", s_reps, "Independent estimates");
  simulate_cmd->add_option("--seed", s_seed, "Master seed");
  simulate_cmd->add_option("--epsilon", s_epsilon, "Target variance for the sample-count estimate");
  simulate_cmd->add_option("--out", s_out.path, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const TwirlOptions options{unsafe_size};
  try {
    if (*app1) {
      std::optional<std::vector<Matrix>> factors;
      if (!a1_factor.empty()) {
        const auto count = a1_factor.size();
        if (count != 4 && count != 4 * static_cast<std::size_t>(std::max(a1_n, 0))) {
          throw Error(ErrorKind::InvalidFactor, "--factor expects 4 or 4n values");
        }
        factors.emplace();
        for (int q = 0; q < a1_n; ++q) factors->push_back(factor_from_coefficients(a1_factor, count == 4 ? 0 : 4 * q));
      }
      const App1Report r = run_app1(a1_n, a1_trials, a1_seed, factors);
      emit(a1_out, a1_out.format == "csv" ? app1_csv(r) : dump(envelope("app1", a1_seed, r)));
      return finish(r.bounds_ok && r.gap_ok, "app1: variance bounds or gap identity violated");
    }
    if (*app2) {
      const App2Report r = run_app2(a2_n, a2_delta);
      emit(a2_out, a2_out.format == "csv" ? app2_csv(r) : dump(envelope("app2", std::nullopt, r)));
      return finish(r.ok, "app2: census bound or dense cross-check failed");
    }
    if (*qcrb) {
      const QcrbSuiteReport r = run_qcrb_suite(parse_suite_group(q_group), q_n, q_trials, q_seed, q_tol);
      log::info("qcrb max residual " + std::to_string(r.identity.max_residual));
      emit(q_out, dump(envelope("qcrb", q_seed, r)));
      return finish(r.pass, "qcrb: residual above tolerance");
    }
    if (*twirl) {
      const PauliString p = PauliString::parse(t_pauli);
      const SymmetrizedPauli s = twirl_sn_pauli(p);
      json data = {{"pauli", p.to_string()}, {"group", t_group}, {"twirl", symmetrized_pauli_to_json(s)}};
      if (p.qubits() <= 4) data["dense"] = matrix_to_json(sym_pauli_dense(s).matrix());
      if (p.qubits() % 2 == 1) {
        const GhzVariances v = ghz_pauli_variances(p.qubits(), p);
        data["ghz"] = {{"varX", v.var_x}, {"varY", v.var_y}, {"ratio", optional_to_json(v.ratio())}};
      }
      emit(t_out, dump(envelope("twirl", std::nullopt, data)));
      return kExitOk;
    }
    if (*simulate_cmd) {
      const SimulateReport r = run_simulate(s_n, s_shots, s_reps, s_seed, s_epsilon, options);
      log::info("simulate: empirical Var X " + std::to_string(r.comparison.x.empirical_variance) + ", Y " +
                std::to_string(r.comparison.y.empirical_variance));
      emit(s_out, dump(envelope("simulate", s_seed, r)));
      return kExitOk;
    }
  } catch (const Error& e) {
    log::error(std::string(to_string(e.kind())) + ": " + e.what());
    return e.kind() == ErrorKind::BoundViolation ? kExitBound : kExitInput;
  } catch (const std::exception& e) {
    log::error(e.what());
    return kExitInput;
  }
  return kExitInput;
}
