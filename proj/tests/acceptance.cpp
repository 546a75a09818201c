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

// End-to-end acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance <path to symtwirl CLI>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "symtwirl/report_io.hpp"
#include "symtwirl/symtwirl.hpp"

namespace {

using namespace symtwirl;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool condition, const std::string& what) {
  if (!condition) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", v);
  return buffer;
}

// 1. Variance identity and closed-form vs numeric QFI.
Outcome identity() {
  Outcome o;
  double worst = 0.0;
  for (SuiteGroup g : {SuiteGroup::Z2, SuiteGroup::Translation, SuiteGroup::Permutation}) {
    const QcrbSuiteReport r = run_qcrb_suite(g, 3, 200, 20261014, 1e-6);
    worst = std::max({worst, r.identity.max_residual, r.identity.max_qfi_discrepancy});
    require(o, r.identity.trials == 200, to_string(g) + ": trial count");
    require(o, r.identity.max_residual <= 1e-6, to_string(g) + ": residual " + fmt(r.identity.max_residual));
    require(o, r.identity.max_qfi_discrepancy <= 1e-6, to_string(g) + ": QFI mismatch " + fmt(r.identity.max_qfi_discrepancy));
  }
  if (o.pass) o.detail = "max deviation " + fmt(worst);
  return o;
}

// 2. Translation-invariant bounds and gap identity.
Outcome app1() {
  Outcome o;
  for (int n = 2; n <= 8; ++n) {
    const App1Report r = run_app1(n, 100, 7000 + static_cast<std::uint64_t>(n));
    const double d = std::ldexp(1.0, n);
    require(o, r.records.size() == 102, "n=" + std::to_string(n) + ": record count");
    require(o, r.min_var_x >= d - 1.0 - 1e-7 && r.max_var_x <= d + 1e-7, "n=" + std::to_string(n) + ": varX bounds");
    require(o, r.max_var_y <= 1.0 + 1e-7, "n=" + std::to_string(n) + ": varY bound");
    for (const auto& rec : r.records) require(o, rec.var_y >= -1e-7, "n=" + std::to_string(n) + ": varY < 0");
    require(o, r.bounds_ok, "n=" + std::to_string(n) + ": bounds flag");
    if (n <= 5) require(o, r.gap_ok && r.max_gap_residual <= 1e-7, "n=" + std::to_string(n) + ": gap " + fmt(r.max_gap_residual));
  }
  return o;
}

// Representative with x-weight k and z-weight parity l.
PauliString representative(int n, int k, int l) {
  const std::uint64_t x = (std::uint64_t{1} << k) - 1;
  return PauliString(n, x, l == 0 ? 0 : 1);
}

// 3. GHZ table against a brute-force average over all n! permutations.
Outcome app2() {
  Outcome o;
  double worst = 0.0;
  for (int n : {3, 5, 7}) {
    const App2Report r = run_app2(n, 0.5);
    const GroupRep rep = permutation_rep(n);
    const DensityMatrix ghz = DensityMatrix::pure(ghz_state(n));
    for (const auto& row : r.rows) {
      const bool zero = (row.k_weight == 0 || row.k_weight == n) && row.l_parity == 0;
      require(o, row.variances.var_x == (zero ? Rational{0, 1} : Rational{1, 1}), "varX exact");
      require(o, row.variances.var_y == (zero ? Rational{0, 1} : Rational::make(1, binomial(n, row.k_weight))), "varY exact");
      const Matrix x = pauli_matrix(representative(n, row.k_weight, row.l_parity)).matrix();
      Matrix y = Matrix::Zero(x.rows(), x.cols());
      for (std::size_t g = 0; g < rep.order(); ++g) y += rep.conjugate(g, x);
      y /= static_cast<double>(rep.order());
      const double dx = std::abs(variance(ghz, HermitianOperator(x)) - row.variances.var_x.to_double());
      const double dy = std::abs(variance(ghz, HermitianOperator(0.5 * (y + y.adjoint()))) - row.variances.var_y.to_double());
      worst = std::max({worst, dx, dy});
    }
    require(o, r.ok, "n=" + std::to_string(n) + ": report not ok");
  }
  require(o, worst <= 1e-9, "dense deviation " + fmt(worst));
  const App2Report nine = run_app2(9, 0.5);
  for (const auto& row : nine.rows) {
    if (row.k_weight == 3 && row.l_parity == 0) {
      const double ratio = row.variances.ratio().value_or(0.0);
      require(o, ratio == 84.0, "n=9 ratio " + fmt(ratio));
      require(o, ratio > nine.ratio_bound_value, "n=9 ratio below bound");
    }
  }
  require(o, std::abs(nine.ratio_bound_value - 48.446) < 1e-3, "bound value " + fmt(nine.ratio_bound_value));
  if (o.pass) o.detail = "dense deviation " + fmt(worst) + ", n=9 ratio 84 > " + fmt(nine.ratio_bound_value);
  return o;
}

// 4. Typical-string census.
Outcome census() {
  Outcome o;
  const CensusRecord c = pauli_census(9, 0.5);
  require(o, c.typical_count == 215040, "n=9 count " + std::to_string(c.typical_count));
  require(o, std::abs(c.bound - 145635.56) < 0.01, "n=9 bound " + fmt(c.bound));
  for (int n = 1; n <= 14; ++n) {
    for (double delta : {0.3, 0.5, 0.7}) {
      require(o, pauli_census(n, delta).holds, "n=" + std::to_string(n) + " delta=" + fmt(delta));
    }
  }
  return o;
}

// 5. Shot-noise statistics at M = 1000, 2000 repetitions.
Outcome sampling() {
  Outcome o;
  constexpr std::uint64_t kShots = 1000, kReps = 2000;
  int configs = 0, y_not_worse = 0;
  const auto record = [&](const ComparisonRecord& c, const std::string& label) {
    ++configs;
    if (c.y.empirical_variance <= c.x.empirical_variance) ++y_not_worse;
    for (const StrategyStats* s : {&c.x, &c.y}) {
      if (s->shot_variance > 0.01) {
        const double rel = std::abs(s->empirical_variance - s->theory_variance) / s->theory_variance;
        require(o, rel <= 0.15, label + ": relative error " + fmt(rel));
      }
      require(o, variance_consistent(*s, kShots), label + ": scaled variance");
    }
  };
  for (int n = 2; n <= 8; ++n) {
    record(run_simulate(n, kShots, kReps, 500 + static_cast<std::uint64_t>(n)).comparison, "simulate n=" + std::to_string(n));
  }
  const std::vector<GroupRep> reps = {z2_qubit_rep(), translation_rep(3), permutation_rep(3), translation_rep(4)};
  for (int t = 0; configs < 100; ++t) {
    const GroupRep& rep = reps[static_cast<std::size_t>(t) % reps.size()];
    Rng rng(mix_seed(0xACCE55, static_cast<std::uint64_t>(t)));
    const BlockStructure bs = decompose_commutant(rep, mix_seed(0xB10C, static_cast<std::uint64_t>(t)));
    const DensityMatrix rho = build_state(bs, random_symmetric_state(bs, rng.next()));
    const HermitianOperator x(random_hermitian(rep.dim(), rng));
    record(strategy_comparison(rho, x, rep, kShots, kReps, rng.next()), "config " + std::to_string(t));
  }
  const double fraction = static_cast<double>(y_not_worse) / configs;
  require(o, fraction >= 0.99, "Y <= X in " + fmt(100.0 * fraction) + "%");
  if (o.pass) o.detail = std::to_string(y_not_worse) + "/" + std::to_string(configs) + " configurations with Y <= X";
  return o;
}

// 6. Sample-count formula.
Outcome sample_counts() {
  Outcome o;
  const std::vector<std::tuple<double, double, std::uint64_t>> table = {
      {0.07, 0.01, 7},   {0.0, 0.01, 1},    {1.0, 0.01, 100},    {0.5, 0.1, 5},         {0.51, 0.1, 6},
      {1e-9, 1.0, 1},    {3.0, 1.0, 3},     {3.0000001, 1.0, 4}, {0.3, 0.1, 3},         {0.2, 0.1, 2},
      {0.123, 0.01, 13}, {2.5, 0.5, 5},     {1.0, 3.0, 1},       {10.0, 3.0, 4},        {9.0, 3.0, 3},
      {0.09, 0.03, 3},   {1e-4, 0.01, 1},   {100.0, 0.01, 10000}, {1.0 / 126.0, 0.01, 1}, {0.7, 0.1, 7},
  };
  for (const auto& [v, eps, expected] : table) {
    const std::uint64_t got = min_samples(v, eps);
    require(o, got == expected, fmt(v) + "/" + fmt(eps) + " gave " + std::to_string(got));
  }
  const GhzVariances ghz = ghz_class_variances(9, 4, 0);
  require(o, min_samples(ghz.var_y.to_double(), 0.01) == 1, "GHZ Y count");
  require(o, min_samples(ghz.var_x.to_double(), 0.01) == 100, "GHZ X count");
  return o;
}

// 7. Byte-identical CLI output modulo the timestamp.
std::string run_cli(const std::string& cli, const std::string& args, const std::filesystem::path& out, int& status) {
  std::filesystem::remove(out);
  const std::string command = "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" >/dev/null 2>&1";
  status = std::system(command.c_str());
  std::ifstream in(out, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_timestamp(const std::string& text) {
  json j = json::parse(text);
  j.at("meta").erase("timestamp");
  return j.dump();
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "symtwirl_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> commands = {
      "app1 --n 5 --trials 20 --seed 3",
      "app2 --n 9 --delta 0.5",
      "qcrb --group z2 --trials 20 --seed 4",
      "qcrb --group translation --n 3 --trials 20 --seed 4",
      "qcrb --group permutation --n 3 --trials 20 --seed 4",
      "twirl --pauli XYZZI --group permutation",
      "simulate --n 3 --shots 200 --reps 50 --seed 6",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    int s1 = 0, s2 = 0;
    const std::string a = run_cli(cli, commands[i], dir / ("a" + std::to_string(i) + ".json"), s1);
    const std::string b = run_cli(cli, commands[i], dir / ("b" + std::to_string(i) + ".json"), s2);
    if (s1 != 0 || s2 != 0 || a.empty() || b.empty()) {
      require(o, false, "'" + commands[i] + "' failed");
      continue;
    }
    try {
      const json ja = json::parse(a);
      for (const char* key : {"version", "command", "seed", "timestamp"}) {
        require(o, ja.at("meta").contains(key), "'" + commands[i] + "' meta." + key);
      }
      require(o, ja.contains("data"), "'" + commands[i] + "' data");
      require(o, without_timestamp(a) == without_timestamp(b), "'" + commands[i] + "' differs");
    } catch (const json::exception& e) {
      require(o, false, "'" + commands[i] + "': " + e.what());
    }
  }
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <symtwirl cli>\n";
    return 3;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"variance identity", identity}, {"translation bounds", app1}, {"GHZ table", app2},
      {"typical census", census},      {"sampling", sampling},       {"sample counts", sample_counts},
  };
  bool all = true;
  int index = 1;
  const auto report = [&](const char* name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index++ << " (" << name << ")";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
    all = all && o.pass;
  };
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(name, o);
  }
  Outcome det;
  try {
    det = determinism(cli);
  } catch (const std::exception& e) {
    det = {false, std::string("exception: ") + e.what()};
  }
  report("determinism", det);
  return all ? 0 : 1;
}
