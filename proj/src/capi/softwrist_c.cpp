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

#include "softwrist/softwrist.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "softwrist/config.hpp"
#include "softwrist/dynamics.hpp"
#include "softwrist/error.hpp"
#include "softwrist/kinematics.hpp"
#include "softwrist/mpc_controller.hpp"
#include "softwrist/qp_solver.hpp"
#include "softwrist/reports.hpp"
#include "softwrist/sim_harness.hpp"

struct sw_config {
  softwrist::RunConfig cfg;
};

struct sw_run {
  softwrist::SuiteRow row;
};

namespace {

using softwrist::Error;
using softwrist::ErrorCode;

thread_local std::string g_last_error;

sw_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return SW_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDomain:
      return SW_ERR_DOMAIN;
    case ErrorCode::kUnphysical:
      return SW_ERR_UNPHYSICAL;
    case ErrorCode::kNonFinite:
      return SW_ERR_NON_FINITE;
    case ErrorCode::kConfig:
      return SW_ERR_CONFIG;
    case ErrorCode::kIo:
      return SW_ERR_IO;
  }
  return SW_ERR_INTERNAL;
}

sw_status fail(sw_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
sw_status guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SW_ERR_INTERNAL, "unknown error");
  }
}

sw_status null_arg(const char* name) {
  return fail(SW_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

sw_status copy_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size();
  if (cap > 0) {
    if (!buf) return null_arg("buf");
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return SW_OK;
}

softwrist::CurvatureState to_state(const sw_state& s) {
  return {s.alpha, s.gamma, s.alpha_dot, s.gamma_dot};
}

}  // namespace

extern "C" {

const char* sw_version(void) { return "0.1.0"; }

const char* sw_status_string(sw_status status) {
  switch (status) {
    case SW_OK:
      return "ok";
    case SW_WARNING:
      return "warning";
    case SW_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case SW_ERR_DOMAIN:
      return "domain error";
    case SW_ERR_UNPHYSICAL:
      return "unphysical parameters";
    case SW_ERR_NON_FINITE:
      return "non-finite result";
    case SW_ERR_CONFIG:
      return "configuration error";
    case SW_ERR_IO:
      return "i/o error";
    case SW_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* sw_last_error(void) { return g_last_error.c_str(); }

sw_status sw_config_create_default(sw_config** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new sw_config{};
    return SW_OK;
  });
}

sw_status sw_config_parse(const char* json_text, sw_config** out) {
  if (!json_text) return null_arg("json_text");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new sw_config{softwrist::parse_config(json_text)};
    return SW_OK;
  });
}

sw_status sw_config_load(const char* path, sw_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new sw_config{softwrist::load_config(path)};
    return SW_OK;
  });
}

void sw_config_destroy(sw_config* config) { delete config; }

sw_status sw_config_dump(const sw_config* config, char* buf, size_t cap, size_t* needed) {
  if (!config) return null_arg("config");
  return guarded([&] { return copy_string(softwrist::dump_config(config->cfg), buf, cap, needed); });
}

sw_status sw_config_output_dir(const sw_config* config, char* buf, size_t cap,
                               size_t* needed) {
  if (!config) return null_arg("config");
  return guarded(
      [&] { return copy_string(config->cfg.output_dir.value_or(""), buf, cap, needed); });
}

sw_status sw_config_seed(const sw_config* config, uint64_t* seed) {
  if (!config) return null_arg("config");
  if (!seed) return null_arg("seed");
  *seed = config->cfg.seed;
  return SW_OK;
}

size_t sw_config_warning_count(const sw_config* config) {
  return config ? softwrist::params_warnings(config->cfg.plant).size() : 0;
}

sw_status sw_config_warning(const sw_config* config, size_t index, char* buf, size_t cap,
                            size_t* needed) {
  if (!config) return null_arg("config");
  return guarded([&] {
    const auto w = softwrist::params_warnings(config->cfg.plant);
    if (index >= w.size()) return fail(SW_ERR_INVALID_ARGUMENT, "warning index out of range");
    return copy_string(w[index], buf, cap, needed);
  });
}

sw_status sw_end_transform(const sw_config* config, const sw_state* state, double out[16]) {
  if (!config) return null_arg("config");
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    const Eigen::Matrix4d t = softwrist::end_transform(to_state(*state), config->cfg.plant.geom);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) out[4 * r + c] = t(r, c);
    }
    return SW_OK;
  });
}

sw_status sw_backbone_point(const sw_config* config, const sw_state* state, double s,
                            double out[3]) {
  if (!config) return null_arg("config");
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    const Eigen::Vector3d p =
        softwrist::backbone_point(to_state(*state), s, config->cfg.plant.geom);
    std::copy(p.data(), p.data() + 3, out);
    return SW_OK;
  });
}

sw_status sw_tendon_lengths(const sw_config* config, const sw_state* state, double out[3]) {
  if (!config) return null_arg("config");
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto q = softwrist::tendon_lengths(to_state(*state), config->cfg.plant.geom);
    std::copy(q.begin(), q.end(), out);
    return SW_OK;
  });
}

sw_status sw_tendon_velocities(const sw_config* config, const sw_state* state,
                               double out[3]) {
  if (!config) return null_arg("config");
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto q = softwrist::tendon_velocities(to_state(*state), config->cfg.plant.geom);
    std::copy(q.begin(), q.end(), out);
    return SW_OK;
  });
}

sw_status sw_energy_factors(double alpha, sw_factors* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = {softwrist::k1_exact(alpha), softwrist::k1_fit(alpha), softwrist::k2_fit(alpha),
            softwrist::k6_fit(alpha), softwrist::k7_fit(alpha)};
    if (softwrist::fit_status(alpha) == softwrist::FitStatus::kOutOfRange) {
      g_last_error = "energy-factor fits evaluated outside their range";
      return SW_WARNING;
    }
    return SW_OK;
  });
}

sw_status sw_planar_coefficients(const sw_config* config, double alpha, sw_planar* out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto c = softwrist::planar_coefficients(alpha, config->cfg.plant);
    *out = {c.inertia, c.coriolis, c.stiffness, c.actuation};
    return SW_OK;
  });
}

sw_status sw_forward_dynamics(const sw_config* config, const sw_state* state, double force,
                              double tau_ext, double* alpha_ddot) {
  if (!config) return null_arg("config");
  if (!state) return null_arg("state");
  if (!alpha_ddot) return null_arg("alpha_ddot");
  return guarded([&] {
    *alpha_ddot =
        softwrist::forward_dynamics(to_state(*state), force, tau_ext, config->cfg.plant);
    return SW_OK;
  });
}

sw_status sw_feedback_linearize(const sw_config* config, double y, double alpha,
                                double alpha_dot, double* force) {
  if (!config) return null_arg("config");
  if (!force) return null_arg("force");
  return guarded([&] {
    *force = softwrist::feedback_linearize(y, alpha, alpha_dot, config->cfg.plant);
    return SW_OK;
  });
}

sw_status sw_qp_solve(int n, int m, const double* hessian, const double* linear,
                      const double* a_in, const double* b_in, double* z_out,
                      double* lambda_out, int* qp_status, int* iterations) {
  if (n < 1 || m < 0) return fail(SW_ERR_INVALID_ARGUMENT, "need n >= 1 and m >= 0");
  if (!hessian) return null_arg("hessian");
  if (!linear) return null_arg("linear");
  if (m > 0 && (!a_in || !b_in)) return null_arg("a_in/b_in");
  if (!z_out) return null_arg("z_out");
  return guarded([&] {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    softwrist::QpProblem p;
    p.hessian = Eigen::Map<const RowMajor>(hessian, n, n);
    p.linear = Eigen::Map<const Eigen::VectorXd>(linear, n);
    p.a_in = m > 0 ? Eigen::MatrixXd(Eigen::Map<const RowMajor>(a_in, m, n))
                   : Eigen::MatrixXd(0, n);
    p.b_in = m > 0 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(b_in, m))
                   : Eigen::VectorXd(0);
    softwrist::QpSolver solver;
    const auto sol = solver.solve(p);
    std::copy(sol.z.data(), sol.z.data() + n, z_out);
    if (lambda_out && m > 0) std::copy(sol.lambda.data(), sol.lambda.data() + m, lambda_out);
    if (qp_status) *qp_status = static_cast<int>(sol.status);
    if (iterations) *iterations = sol.iterations;
    return SW_OK;
  });
}

sw_status sw_qp_selftest(uint64_t seed, int count, const char* csv_path,
                         sw_selftest_summary* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto rows = softwrist::qp_selftest(seed, count);
    if (csv_path) softwrist::write_selftest_csv(csv_path, rows);
    *out = {count, 0, -1, 0, 0.0};
    for (const auto& r : rows) {
      out->worst_rel_error = std::max(out->worst_rel_error, r.rel_error);
      if (r.pass) continue;
      if (out->failures++ == 0) {
        out->first_failure_index = r.index;
        out->first_failure_seed = r.problem_seed;
      }
    }
    return SW_OK;
  });
}

size_t sw_scenario_count(void) { return softwrist::scenario_names().size(); }

const char* sw_scenario_name(size_t index) {
  static const std::vector<std::string> names = softwrist::scenario_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

sw_status sw_simulate(const sw_config* config, const char* scenario, sw_run** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  return guarded([&] {
    const softwrist::Scenario s =
        scenario ? softwrist::resolve_scenario(config->cfg, std::string_view(scenario))
                 : softwrist::resolve_scenario(config->cfg);
    auto run = std::make_unique<sw_run>();
    run->row.scenario = s.name;
    run->row.result = softwrist::run_closed_loop(s, config->cfg.plant, config->cfg.controller);
    run->row.metrics = softwrist::compute_metrics(run->row.result.trajectory);
    *out = run.release();
    return SW_OK;
  });
}

void sw_run_destroy(sw_run* run) { delete run; }

size_t sw_run_size(const sw_run* run) {
  return run ? run->row.result.trajectory.samples.size() : 0;
}

sw_status sw_run_sample(const sw_run* run, size_t index, sw_sample* out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  const auto& v = run->row.result.trajectory.samples;
  if (index >= v.size()) return fail(SW_ERR_INVALID_ARGUMENT, "sample index out of range");
  const auto& s = v[index];
  *out = {s.t, s.alpha_ref, s.alpha, s.alpha_dot_ref, s.alpha_dot, s.y, s.force, s.eps, s.qp_iters};
  return SW_OK;
}

int sw_run_diverged(const sw_run* run) {
  return run && run->row.result.status == softwrist::RunStatus::kDiverged;
}

int sw_run_solver_fallbacks(const sw_run* run) {
  return run ? run->row.result.solver_fallbacks : 0;
}

sw_status sw_run_diagnostic(const sw_run* run, char* buf, size_t cap, size_t* needed) {
  if (!run) return null_arg("run");
  return guarded([&] { return copy_string(run->row.result.diagnostic, buf, cap, needed); });
}

sw_status sw_run_target(const sw_run* run, double* target) {
  if (!run) return null_arg("run");
  if (!target) return null_arg("target");
  *target = run->row.result.trajectory.target;
  return SW_OK;
}

sw_status sw_run_metrics(const sw_run* run, double band_fraction, sw_metrics* out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto m = softwrist::compute_metrics(
        run->row.result.trajectory,
        band_fraction > 0.0 ? band_fraction : softwrist::kDefaultBandFraction);
    *out = {m.rmse,
            m.settling_time,
            m.settled ? 1 : 0,
            m.steady_state_error,
            m.peak_error,
            run->row.result.trajectory.disturbance_start ? 1 : 0,
            m.recovered ? 1 : 0,
            m.recovery_time.value_or(0.0)};
    return SW_OK;
  });
}

sw_status sw_run_write_trajectory(const sw_run* run, const char* path) {
  if (!run) return null_arg("run");
  if (!path) return null_arg("path");
  return guarded([&] {
    softwrist::write_trajectory_csv(path, run->row.result.trajectory);
    return SW_OK;
  });
}

sw_status sw_run_write_metrics(const sw_run* run, const char* path) {
  if (!run) return null_arg("run");
  if (!path) return null_arg("path");
  return guarded([&] {
    softwrist::write_metrics_csv(path, std::span(&run->row, 1));
    return SW_OK;
  });
}

sw_status sw_write_factors(double alpha_min, double alpha_max, int samples, const char* path,
                           double* max_k1_err) {
  if (!path) return null_arg("path");
  return guarded([&] {
    const auto rows = softwrist::factor_table(alpha_min, alpha_max, samples);
    softwrist::write_factors_csv(path, rows);
    if (max_k1_err) {
      *max_k1_err = 0.0;
      for (const auto& r : rows) *max_k1_err = std::max(*max_k1_err, r.k1_abs_err);
    }
    return SW_OK;
  });
}

sw_status sw_reproduce(const sw_config* config, const char* out_dir, sw_reproduce_row* rows,
                       size_t cap, size_t* count) {
  if (!config) return null_arg("config");
  if (!out_dir) return null_arg("out_dir");
  if (cap > 0 && !rows) return null_arg("rows");
  return guarded([&] {
    const auto result =
        softwrist::reproduce(out_dir, config->cfg.plant, config->cfg.controller);
    if (count) *count = result.rows.size();
    for (size_t i = 0; i < std::min(cap, result.rows.size()); ++i) {
      const auto& r = result.rows[i];
      const auto& m = r.run.metrics;
      sw_reproduce_row& o = rows[i];
      o = {};
      std::snprintf(o.scenario, sizeof o.scenario, "%s", r.scenario.c_str());
      o.completed = r.run.error.empty() &&
                    r.run.result.status == softwrist::RunStatus::kCompleted;
      o.settled = m.settled;
      o.settling_time = m.settling_time;
      o.steady_state_error = m.steady_state_error;
      o.max_alpha = r.max_alpha;
      o.rmse = m.rmse;
      o.has_disturbance = r.run.result.trajectory.disturbance_start.has_value();
      o.recovered = m.recovered;
      o.recovery_time = m.recovery_time.value_or(0.0);
      o.slow_recovery = r.slow_recovery;
      o.pass = r.pass;
    }
    return SW_OK;
  });
}

}  // extern "C"
