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
 * JSON and CSV encodings of the report types, plus the atomic file writer.
 *
 * Every document has the shape {meta: {version, command, seed, timestamp},
 * data: report}. Complex matrices encode as {"re": [[..]], "im": [[..]]}.
 * Optional values encode as null.
 */

#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symtwirl/apps.hpp"
#include "symtwirl/commutant.hpp"
#include "symtwirl/linalg.hpp"
#include "symtwirl/metrology.hpp"
#include "symtwirl/sampler.hpp"
#include "symtwirl/twirl.hpp"

namespace symtwirl {

using json = nlohmann::json;

inline constexpr const char* kReportVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Building blocks
// ---------------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ir = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const auto rows = static_cast<Index>(re.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(re.at(0).size());
  if (im.size() != re.size()) throw Error(ErrorKind::ShapeMismatch, "matrix_from_json: re/im row count differs");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto& rr = re.at(static_cast<std::size_t>(r));
    const auto& ir = im.at(static_cast<std::size_t>(r));
    if (static_cast<Index>(rr.size()) != cols || static_cast<Index>(ir.size()) != cols) {
      throw Error(ErrorKind::ShapeMismatch, "matrix_from_json: ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = complex(rr.at(static_cast<std::size_t>(c)).get<double>(), ir.at(static_cast<std::size_t>(c)).get<double>());
    }
  }
  return m;
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

inline void to_json(json& j, const Rational& r) { j = {{"num", r.num}, {"den", r.den}, {"float", r.to_double()}}; }
inline void from_json(const json& j, Rational& r) { r = Rational{j.at("num").get<std::uint64_t>(), j.at("den").get<std::uint64_t>()}; }

inline void to_json(json& j, const Block& b) { j = json::array({b.multiplicity, b.irrep_dim}); }
inline void from_json(const json& j, Block& b) {
  b.multiplicity = j.at(0).get<int>();
  b.irrep_dim = j.at(1).get<int>();
}

inline json block_structure_to_json(const BlockStructure& bs) {
  return {{"blocks", bs.blocks()}, {"basis", matrix_to_json(bs.basis())}};
}

inline BlockStructure block_structure_from_json(const json& j) {
  return BlockStructure(j.at("blocks").get<std::vector<Block>>(), matrix_from_json(j.at("basis")));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline void to_json(json& j, const IdentityReport& r) {
  j = {{"trials", r.trials},
       {"max_residual", r.max_residual},
       {"max_residual_closed", r.max_residual_closed},
       {"max_residual_numeric", r.max_residual_numeric},
       {"max_qfi_discrepancy", r.max_qfi_discrepancy},
       {"max_expectation_gap", r.max_expectation_gap}};
}
inline void from_json(const json& j, IdentityReport& r) {
  j.at("trials").get_to(r.trials);
  j.at("max_residual").get_to(r.max_residual);
  j.at("max_residual_closed").get_to(r.max_residual_closed);
  j.at("max_residual_numeric").get_to(r.max_residual_numeric);
  j.at("max_qfi_discrepancy").get_to(r.max_qfi_discrepancy);
  j.at("max_expectation_gap").get_to(r.max_expectation_gap);
}

inline void to_json(json& j, const QcrbSuiteReport& r) {
  j = {{"group", r.group}, {"n", r.n},        {"trials", r.trials}, {"seed", r.seed},
       {"tol", r.tol},     {"blocks", r.blocks}, {"identity", r.identity},      {"pass", r.pass}};
}
inline void from_json(const json& j, QcrbSuiteReport& r) {
  j.at("group").get_to(r.group);
  j.at("n").get_to(r.n);
  j.at("trials").get_to(r.trials);
  j.at("seed").get_to(r.seed);
  j.at("tol").get_to(r.tol);
  j.at("blocks").get_to(r.blocks);
  j.at("identity").get_to(r.identity);
  j.at("pass").get_to(r.pass);
}

inline void to_json(json& j, const App1Trial& t) {
  j = {{"kind", t.kind},
       {"varX", t.var_x},
       {"varY", t.var_y},
       {"gap_residual", optional_to_json(t.gap_residual)},
       {"bounds_ok", t.bounds_ok}};
}
inline void from_json(const json& j, App1Trial& t) {
  j.at("kind").get_to(t.kind);
  j.at("varX").get_to(t.var_x);
  j.at("varY").get_to(t.var_y);
  t.gap_residual = optional_from_json<double>(j.at("gap_residual"));
  j.at("bounds_ok").get_to(t.bounds_ok);
}

inline void to_json(json& j, const App1Report& r) {
  j = {{"n", r.n},
       {"trials", r.trials},
       {"seed", r.seed},
       {"default_observable", r.default_observable},
       {"records", r.records},
       {"summary",
        {{"min_varX", r.min_var_x},
         {"max_varX", r.max_var_x},
         {"max_varY", r.max_var_y},
         {"max_gap_residual", r.max_gap_residual},
         {"bounds_ok", r.bounds_ok},
         {"gap_ok", r.gap_ok}}}};
}
inline void from_json(const json& j, App1Report& r) {
  j.at("n").get_to(r.n);
  j.at("trials").get_to(r.trials);
  j.at("seed").get_to(r.seed);
  j.at("default_observable").get_to(r.default_observable);
  j.at("records").get_to(r.records);
  const auto& s = j.at("summary");
  s.at("min_varX").get_to(r.min_var_x);
  s.at("max_varX").get_to(r.max_var_x);
  s.at("max_varY").get_to(r.max_var_y);
  s.at("max_gap_residual").get_to(r.max_gap_residual);
  s.at("bounds_ok").get_to(r.bounds_ok);
  s.at("gap_ok").get_to(r.gap_ok);
}

inline void to_json(json& j, const CensusRecord& c) {
  j = {{"n", c.n},
       {"delta", c.delta},
       {"first_weight", c.first_weight},
       {"last_weight", c.last_weight},
       {"typical_count", c.typical_count},
       {"total", c.total},
       {"bound", c.bound},
       {"holds", c.holds}};
}
inline void from_json(const json& j, CensusRecord& c) {
  j.at("n").get_to(c.n);
  j.at("delta").get_to(c.delta);
  j.at("first_weight").get_to(c.first_weight);
  j.at("last_weight").get_to(c.last_weight);
  j.at("typical_count").get_to(c.typical_count);
  j.at("total").get_to(c.total);
  j.at("bound").get_to(c.bound);
  j.at("holds").get_to(c.holds);
}

inline void to_json(json& j, const App2Row& row) {
  j = {{"k_weight", row.k_weight},
       {"l_parity", row.l_parity == 0 ? "even" : "odd"},
       {"varX", row.variances.var_x},
       {"varY", row.variances.var_y},
       {"ratio", optional_to_json(row.variances.ratio())}};
}
inline void from_json(const json& j, App2Row& row) {
  j.at("k_weight").get_to(row.k_weight);
  row.l_parity = j.at("l_parity").get<std::string>() == "even" ? 0 : 1;
  j.at("varX").get_to(row.variances.var_x);
  j.at("varY").get_to(row.variances.var_y);
}

inline void to_json(json& j, const DenseCheck& c) {
  j = {{"pauli", c.pauli}, {"varX_dense", c.var_x_dense}, {"varY_dense", c.var_y_dense}, {"varX", c.var_x}, {"varY", c.var_y}};
}
inline void from_json(const json& j, DenseCheck& c) {
  j.at("pauli").get_to(c.pauli);
  j.at("varX_dense").get_to(c.var_x_dense);
  j.at("varY_dense").get_to(c.var_y_dense);
  j.at("varX").get_to(c.var_x);
  j.at("varY").get_to(c.var_y);
}

inline void to_json(json& j, const App2Report& r) {
  j = {{"n", r.n},
       {"delta", r.delta},
       {"table", r.rows},
       {"census", r.census},
       {"ratio_bound_value", r.ratio_bound_value},
       {"min_typical_binomial", r.min_typical_binomial},
       {"ratio_bound_below_min", r.ratio_bound_below_min},
       {"dense_checks", r.dense_checks},
       {"max_dense_deviation", r.max_dense_deviation},
       {"ok", r.ok}};
}
inline void from_json(const json& j, App2Report& r) {
  j.at("n").get_to(r.n);
  j.at("delta").get_to(r.delta);
  j.at("table").get_to(r.rows);
  j.at("census").get_to(r.census);
  j.at("ratio_bound_value").get_to(r.ratio_bound_value);
  j.at("min_typical_binomial").get_to(r.min_typical_binomial);
  j.at("ratio_bound_below_min").get_to(r.ratio_bound_below_min);
  j.at("dense_checks").get_to(r.dense_checks);
  j.at("max_dense_deviation").get_to(r.max_dense_deviation);
  j.at("ok").get_to(r.ok);
}

inline void to_json(json& j, const RunRecord& r) {
  json histogram = json::array();
  for (std::size_t y = 0; y < r.outcomes.size(); ++y) histogram.push_back({{"value", r.outcomes[y]}, {"count", r.counts[y]}});
  j = {{"observable_tag", r.observable_tag},
       {"M", r.shots},
       {"estimate", r.estimate},
       {"seed", r.seed},
       {"histogram", std::move(histogram)}};
}
inline void from_json(const json& j, RunRecord& r) {
  j.at("observable_tag").get_to(r.observable_tag);
  j.at("M").get_to(r.shots);
  j.at("estimate").get_to(r.estimate);
  j.at("seed").get_to(r.seed);
  r.outcomes.clear();
  r.counts.clear();
  for (const auto& h : j.at("histogram")) {
    r.outcomes.push_back(h.at("value").get<double>());
    r.counts.push_back(h.at("count").get<std::uint64_t>());
  }
}

inline void to_json(json& j, const StrategyStats& s) {
  j = {{"shot_variance", s.shot_variance},
       {"theory_variance", s.theory_variance},
       {"empirical_variance", s.empirical_variance},
       {"empirical_mean", s.empirical_mean},
       {"mean_z", s.mean_z},
       {"mean_flagged", s.mean_flagged}};
}
inline void from_json(const json& j, StrategyStats& s) {
  j.at("shot_variance").get_to(s.shot_variance);
  j.at("theory_variance").get_to(s.theory_variance);
  j.at("empirical_variance").get_to(s.empirical_variance);
  j.at("empirical_mean").get_to(s.empirical_mean);
  j.at("mean_z").get_to(s.mean_z);
  j.at("mean_flagged").get_to(s.mean_flagged);
}

inline void to_json(json& j, const ComparisonRecord& c) {
  j = {{"M", c.shots}, {"reps", c.reps}, {"seed", c.seed}, {"expectation", c.expectation}, {"X", c.x}, {"Y", c.y}};
}
inline void from_json(const json& j, ComparisonRecord& c) {
  j.at("M").get_to(c.shots);
  j.at("reps").get_to(c.reps);
  j.at("seed").get_to(c.seed);
  j.at("expectation").get_to(c.expectation);
  j.at("X").get_to(c.x);
  j.at("Y").get_to(c.y);
}

inline void to_json(json& j, const SimulateReport& r) {
  j = {{"n", r.n},
       {"fourier_weights", r.fourier_weights},
       {"comparison", r.comparison},
       {"x_consistent", r.x_consistent},
       {"y_consistent", r.y_consistent},
       {"y_not_worse", r.y_not_worse},
       {"epsilon", r.epsilon},
       {"min_samples_X", r.min_samples_x},
       {"min_samples_Y", r.min_samples_y}};
}
inline void from_json(const json& j, SimulateReport& r) {
  j.at("n").get_to(r.n);
  j.at("fourier_weights").get_to(r.fourier_weights);
  j.at("comparison").get_to(r.comparison);
  j.at("x_consistent").get_to(r.x_consistent);
  j.at("y_consistent").get_to(r.y_consistent);
  j.at("y_not_worse").get_to(r.y_not_worse);
  j.at("epsilon").get_to(r.epsilon);
  j.at("min_samples_X").get_to(r.min_samples_x);
  j.at("min_samples_Y").get_to(r.min_samples_y);
}

inline json symmetrized_pauli_to_json(const SymmetrizedPauli& s) {
  return {{"n", s.n},
          {"type_counts", {{"I", s.type_counts[0]}, {"X", s.type_counts[1]}, {"Y", s.type_counts[2]}, {"Z", s.type_counts[3]}}},
          {"phase_power", s.phase_power},
          {"class_size", s.class_size()},
          {"x_weight", s.x_weight()},
          {"z_weight", s.z_weight()}};
}

inline SymmetrizedPauli symmetrized_pauli_from_json(const json& j) {
  SymmetrizedPauli s;
  j.at("n").get_to(s.n);
  const auto& t = j.at("type_counts");
  s.type_counts = {t.at("I").get<int>(), t.at("X").get<int>(), t.at("Y").get<int>(), t.at("Z").get<int>()};
  j.at("phase_power").get_to(s.phase_power);
  return s;
}

// ---------------------------------------------------------------------------
// Envelope, CSV, files
// ---------------------------------------------------------------------------

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

inline json envelope(const std::string& command, std::optional<std::uint64_t> seed, json data) {
  return {{"meta", {{"version", kReportVersion}, {"command", command}, {"seed", optional_to_json(seed)}, {"timestamp", utc_timestamp()}}},
          {"data", std::move(data)}};
}

/// Shortest round-trip decimal for CSV cells.
inline std::string csv_number(double v) {
  char buffer[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof buffer, "%.*g", precision, v);
    if (std::strtod(buffer, nullptr) == v) break;
  }
  return buffer;
}

/// n, k_weight, l_parity, varX, varY_num, varY_den, varY_float, ratio.
/// ratio is empty for the zero-variance classes.
inline std::string app2_csv(const App2Report& r) {
  std::ostringstream out;
  out << "n,k_weight,l_parity,varX,varY_num,varY_den,varY_float,ratio\n";
  for (const auto& row : r.rows) {
    const auto& v = row.variances;
    const auto ratio = v.ratio();
    out << r.n << ',' << row.k_weight << ',' << (row.l_parity == 0 ? "even" : "odd") << ',' << csv_number(v.var_x.to_double()) << ','
        << v.var_y.num << ',' << v.var_y.den << ',' << csv_number(v.var_y.to_double()) << ','
        << (ratio ? csv_number(*ratio) : std::string()) << '\n';
  }
  return out.str();
}

/// n, trial, kind, varX, varY, gap_residual, bounds_ok.
inline std::string app1_csv(const App1Report& r) {
  std::ostringstream out;
  out << "n,trial,kind,varX,varY,gap_residual,bounds_ok\n";
  for (std::size_t t = 0; t < r.records.size(); ++t) {
    const auto& rec = r.records[t];
    out << r.n << ',' << t << ',' << rec.kind << ',' << csv_number(rec.var_x) << ',' << csv_number(rec.var_y) << ','
        << (rec.gap_residual ? csv_number(*rec.gap_residual) : std::string()) << ',' << (rec.bounds_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

/// Writes to a sibling temporary and renames over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "write_atomic: cannot open " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidArgument, "write_atomic: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::InvalidArgument, "write_atomic: rename failed: " + ec.message());
  }
}

}  // namespace symtwirl
