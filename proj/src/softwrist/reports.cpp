// Copyright 2026 The softwrist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "softwrist/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <system_error>

#include "softwrist/error.hpp"
#include "softwrist/qp_oracle.hpp"
#include "softwrist/qp_solver.hpp"

namespace softwrist {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path) : path_(path), out_(path) {
    if (!out_) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cells, first = false), ...);
    out_ << '\n';
  }
  void close() {
    out_.close();
    if (!out_) throw Error(ErrorCode::kIo, "error writing '" + path_.string() + "'");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  CsvFile f(path);
  f.row("t", "alpha_ref", "alpha", "alpha_dot_ref", "alpha_dot", "y", "F", "eps", "qp_iters");
  for (const auto& s : traj.samples) {
    f.row(num(s.t), num(s.alpha_ref), num(s.alpha), num(s.alpha_dot_ref), num(s.alpha_dot),
          num(s.y), num(s.force), num(s.eps), s.qp_iters);
  }
  f.close();
}

void write_metrics_csv(const std::filesystem::path& path, std::span<const SuiteRow> rows) {
  CsvFile f(path);
  f.row("scenario", "status", "rmse", "settling_time", "settled", "steady_state_error",
        "peak_error", "recovery_time", "recovered", "solver_fallbacks", "error");
  for (const auto& r : rows) {
    const bool has_dist = r.result.trajectory.disturbance_start.has_value();
    const std::string status = !r.error.empty() ? "error"
                               : r.result.status == RunStatus::kDiverged ? "diverged"
                                                                         : "completed";
    // Error text may contain commas; keep the file one record per line.
    std::string err = r.error.empty() ? r.result.diagnostic : r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    f.row(r.scenario, status, num(r.metrics.rmse), num(r.metrics.settling_time),
          r.metrics.settled ? 1 : 0, num(r.metrics.steady_state_error),
          num(r.metrics.peak_error), opt(r.metrics.recovery_time),
          has_dist ? (r.metrics.recovered ? "1" : "0") : "", r.result.solver_fallbacks, err);
  }
  f.close();
}

std::vector<FactorRow> factor_table(double a0, double a1, int samples) {
  if (!(a0 >= 0.0) || !(a1 >= a0) || !(a1 < std::numbers::pi / 2)) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha range must satisfy 0 <= min <= max < pi/2");
  }
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  if (a0 == a1 && samples != 1) {
    throw Error(ErrorCode::kInvalidArgument, "a single-point range takes exactly 1 sample");
  }
  if (a0 < a1 && samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a range needs at least 2 samples");
  }
  std::vector<FactorRow> rows;
  rows.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    double a = a0;
    if (samples > 1) a = i == samples - 1 ? a1 : a0 + (a1 - a0) * i / (samples - 1);
    const double exact = k1_exact(a), fit = k1_fit(a);
    rows.push_back({a, exact, fit, k2_fit(a), k6_fit(a), k7_fit(a), std::abs(fit - exact)});
  }
  return rows;
}

void write_factors_csv(const std::filesystem::path& path, std::span<const FactorRow> rows) {
  CsvFile f(path);
  f.row("alpha", "k1_exact", "k1_fit", "k2_fit", "k6_fit", "k7_fit", "k1_abs_err");
  for (const auto& r : rows) {
    f.row(num(r.alpha), num(r.k1_exact), num(r.k1_fit), num(r.k2_fit), num(r.k6_fit),
          num(r.k7_fit), num(r.k1_abs_err));
  }
  f.close();
}

std::vector<SelftestRow> qp_selftest(std::uint64_t seed, int count) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> un(1, 8), um(1, 12);
  QpSolver solver;
  std::vector<SelftestRow> rows;
  rows.reserve(count);
  for (int i = 0; i < count; ++i) {
    SelftestRow r{};
    r.index = i;
    r.n = un(rng);
    r.m = um(rng);
    r.problem_seed = rng();
    const QpProblem p = random_feasible_qp(r.n, r.m, r.problem_seed);
    const QpSolution sol = solver.solve(p);
    const OracleResult ref = enumerate_active_sets(p);
    r.status = std::string(to_string(sol.status));
    r.iterations = sol.iterations;
    r.objective = sol.objective;
    r.oracle_objective = ref.objective;
    r.rel_error = std::abs(sol.objective - ref.objective) / std::max(1.0, std::abs(ref.objective));
    r.kkt_ok = sol.status == QpStatus::kSolved && kkt_satisfied(p, kkt_residuals(p, sol));
    r.pass = ref.feasible && r.kkt_ok && r.rel_error <= kSelftestObjectiveTol;
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_selftest_csv(const std::filesystem::path& path, std::span<const SelftestRow> rows) {
  CsvFile f(path);
  f.row("index", "problem_seed", "n", "m", "status", "iterations", "objective",
        "oracle_objective", "rel_error", "kkt_ok", "pass");
  for (const auto& r : rows) {
    f.row(r.index, r.problem_seed, r.n, r.m, r.status, r.iterations, num(r.objective),
          num(r.oracle_objective), num(r.rel_error), r.kkt_ok ? 1 : 0, r.pass ? 1 : 0);
  }
  f.close();
}

bool ReproduceResult::all_pass() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const SummaryRow& r) { return r.pass; });
}

std::vector<std::string> reproduce_scenarios() {
  return {"radial-step", "ulnar-step", "flexion-step", "extension-step", "flexion-disturbance"};
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create output directory '" + dir.string() + "'");
  }
  const auto probe = dir / ".softwrist_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw Error(ErrorCode::kIo, "output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

ReproduceResult reproduce(const std::filesystem::path& dir, const WristParams& params,
                          const MpcConfig& config) {
  prepare_output_dir(dir);
  std::vector<Scenario> scenarios;
  for (const auto& name : reproduce_scenarios()) scenarios.push_back(*scenario_preset(name));
  std::vector<SuiteRow> runs = run_suite(scenarios, params, config);

  ReproduceResult out;
  const double alpha_bound = std::numbers::pi / 4 + kAlphaOvershootTol;
  for (auto& run : runs) {
    SummaryRow row;
    row.scenario = run.scenario;
    for (const auto& s : run.result.trajectory.samples) row.max_alpha = std::max(row.max_alpha, s.alpha);
    const Metrics& m = run.metrics;
    const bool disturbed = run.result.trajectory.disturbance_start.has_value();
    std::vector<std::string> why;
    if (!run.error.empty()) why.push_back(run.error);
    if (run.result.status == RunStatus::kDiverged) why.push_back("diverged");
    if (disturbed) {
      if (!m.recovered || *m.recovery_time > kRecoveryBound) why.push_back("recovery");
      row.slow_recovery = !m.recovered || *m.recovery_time > kRecoveryFlag;
    } else {
      if (!m.settled || m.settling_time > kSettlingBound) why.push_back("settling");
      if (m.steady_state_error > kSteadyStateBound) why.push_back("steady_state");
      if (row.max_alpha > alpha_bound) why.push_back("alpha_bound");
    }
    row.pass = why.empty();
    for (std::size_t i = 0; i < why.size(); ++i) row.reason += (i ? ";" : "") + why[i];
    std::replace(row.reason.begin(), row.reason.end(), ',', ';');
    if (!run.result.trajectory.samples.empty()) {
      write_trajectory_csv(dir / (run.scenario + "_trajectory.csv"), run.result.trajectory);
    }
    row.run = std::move(run);
    out.rows.push_back(std::move(row));
  }

  std::vector<SuiteRow> metric_rows;
  for (const auto& r : out.rows) metric_rows.push_back(r.run);
  write_metrics_csv(dir / "metrics.csv", metric_rows);

  CsvFile f(dir / "summary.csv");
  f.row("scenario", "settling_time", "settling_reported", "settling_bound", "steady_state_error",
        "steady_state_bound", "max_alpha", "alpha_bound", "rmse", "rmse_reported",
        "recovery_time", "recovery_bound", "recovery_flag", "slow_recovery", "pass", "reason");
  for (const auto& r : out.rows) {
    const Metrics& m = r.run.metrics;
    const bool disturbed = r.run.result.trajectory.disturbance_start.has_value();
    f.row(r.scenario, m.settled ? num(m.settling_time) : "unsettled", num(kReportedSettlingTime),
          num(kSettlingBound), num(m.steady_state_error), num(kSteadyStateBound),
          num(r.max_alpha), num(alpha_bound), num(m.rmse), num(kReportedRmse),
          disturbed ? (m.recovered ? num(*m.recovery_time) : "unrecovered") : "",
          disturbed ? num(kRecoveryBound) : "", disturbed ? num(kRecoveryFlag) : "",
          disturbed ? (r.slow_recovery ? "1" : "0") : "", r.pass ? "pass" : "fail", r.reason);
  }
  f.close();

  write_factors_csv(dir / "factors.csv", factor_table(0.0, std::numbers::pi / 4, 100));
  return out;
}

}  // namespace softwrist
