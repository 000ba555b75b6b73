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

#include "softwrist/sim_harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "softwrist/error.hpp"

namespace softwrist {
namespace {

constexpr double kGuardLow = -0.1;
constexpr double kGuardHigh = std::numbers::pi / 2;
// Slack for comparing sample times against scenario event times.
constexpr double kTimeEps = 1e-9;

constexpr std::array<Direction, 4> kDirections = {
    Direction::kRadial, Direction::kUlnar, Direction::kFlexion, Direction::kExtension};

double reference_at(const Scenario& s, double t) {
  return t >= s.step_time - kTimeEps ? s.target : 0.0;
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kRadial:
      return "radial";
    case Direction::kUlnar:
      return "ulnar";
    case Direction::kFlexion:
      return "flexion";
    case Direction::kExtension:
      return "extension";
  }
  return "unknown";
}

std::optional<Direction> parse_direction(std::string_view name) {
  for (Direction d : kDirections) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

double bending_plane(Direction d) {
  switch (d) {
    case Direction::kRadial:
      return 0.0;
    case Direction::kUlnar:
      return std::numbers::pi;
    case Direction::kFlexion:
      return std::numbers::pi / 2;
    case Direction::kExtension:
      return 3 * std::numbers::pi / 2;
  }
  return 0.0;
}

void validate(const Scenario& s, const MpcConfig& config) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "scenario '" + s.name + "': " + what);
  };
  if (!(s.dt_sim > 0.0)) fail("dt_sim must be > 0");
  if (s.dt_sim > config.sample_time / 2 + kTimeEps) fail("dt_sim must be <= Ts/2");
  const double ratio = config.sample_time / s.dt_sim;
  if (std::abs(ratio - std::round(ratio)) > 1e-6) {
    fail("controller sample time must be a multiple of dt_sim");
  }
  if (!(s.step_time >= 0.0)) fail("step_time must be >= 0");
  if (!(s.duration > s.step_time)) fail("duration must exceed step_time");
  if (!(s.target > 0.0 && s.target <= std::numbers::pi / 4 + 1e-12)) {
    fail("target must be in (0, pi/4]");
  }
  if (s.disturbance) {
    const Disturbance& d = *s.disturbance;
    if (!std::isfinite(d.force)) fail("disturbance force must be finite");
    if (!(d.start_time >= 0.0) || !(d.duration > 0.0)) {
      fail("disturbance window must have start >= 0 and duration > 0");
    }
    if (d.moment_arm && !(*d.moment_arm > 0.0)) fail("moment_arm must be > 0");
  }
}

std::optional<Scenario> scenario_preset(std::string_view name) {
  for (Direction d : kDirections) {
    const std::string dir(to_string(d));
    if (name == dir + "-step") {
      Scenario s;
      s.name = std::string(name);
      s.direction = d;
      return s;
    }
    if (name == dir + "-disturbance") {
      Scenario s;
      s.name = std::string(name);
      s.direction = d;
      s.duration = 10.0;
      s.disturbance = Disturbance{};
      return s;
    }
  }
  return std::nullopt;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const char* kind : {"-step", "-disturbance"}) {
    for (Direction d : kDirections) out.push_back(std::string(to_string(d)) + kind);
  }
  return out;
}

RunResult run_closed_loop(const Scenario& scenario, const WristParams& params,
                          const MpcConfig& config) {
  validate(scenario, config);
  validate(params);

  const double dt = scenario.dt_sim;
  const long steps = std::lround(scenario.duration / dt);
  const long every = std::lround(config.sample_time / dt);
  const int p = config.prediction_horizon;

  double dist_start = 0.0, dist_end = 0.0, dist_torque = 0.0;
  RunResult result;
  Trajectory& traj = result.trajectory;
  traj.dt = dt;
  traj.step_time = scenario.step_time;
  traj.target = scenario.target;
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  if (scenario.disturbance) {
    const Disturbance& d = *scenario.disturbance;
    dist_start = d.start_time;
    dist_end = d.start_time + d.duration;
    dist_torque = d.force * d.moment_arm.value_or(params.geom.length);
    traj.disturbance_start = dist_start;
    traj.disturbance_end = dist_end;
  }

  MpcController controller(config);
  std::vector<Reference> refs(static_cast<std::size_t>(p));
  CurvatureState x;  // planar: gamma and gamma_dot stay zero
  double force = 0.0, y = 0.0, eps = 0.0;
  int iters = 0;

  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k % every == 0) {
      for (int i = 0; i < p; ++i) {
        refs[i] = {reference_at(scenario, t + (i + 1) * config.sample_time), 0.0};
      }
      const MpcOutput out = controller.step({x.alpha_dot, x.alpha}, refs);
      y = out.y;
      force = feedback_linearize(out.y, out.alpha_hat, out.alpha_dot_hat, params);
      eps = out.diagnostics.slack;
      iters = out.diagnostics.qp_iterations;
      if (out.diagnostics.fallback) ++result.solver_fallbacks;
    }
    traj.samples.push_back(
        {t, reference_at(scenario, t), x.alpha, 0.0, x.alpha_dot, y, force, eps, iters});
    if (k == steps) break;

    const bool disturbed = scenario.disturbance && t >= dist_start - kTimeEps &&
                           t < dist_end - kTimeEps;
    try {
      x = integrate_step(x, force, disturbed ? dist_torque : 0.0, dt, params);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonFinite && e.code() != ErrorCode::kUnphysical) throw;
      result.status = RunStatus::kDiverged;
      result.diagnostic = "t=" + std::to_string(t + dt) + ": " + e.what();
      return result;
    }
    if (x.alpha < kGuardLow || x.alpha > kGuardHigh) {
      std::ostringstream msg;
      msg << "t=" << t + dt << ": alpha=" << x.alpha << " rad left the guard interval ["
          << kGuardLow << ", " << kGuardHigh << "]";
      result.status = RunStatus::kDiverged;
      result.diagnostic = msg.str();
      return result;
    }
  }
  return result;
}

Metrics compute_metrics(const Trajectory& traj, double band_fraction) {
  const auto& s = traj.samples;
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty trajectory");
  if (!(band_fraction > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "band_fraction must be > 0");
  }

  Metrics m;
  const std::size_t n = s.size();
  double sum_sq = 0.0;
  for (const auto& x : s) sum_sq += (x.alpha - x.alpha_ref) * (x.alpha - x.alpha_ref);
  m.rmse = std::sqrt(sum_sq / static_cast<double>(n));

  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double tail_sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) tail_sum += std::abs(s[i].alpha - s[i].alpha_ref);
  m.steady_state_error = tail_sum / static_cast<double>(tail);

  const double final_ref = s.back().alpha_ref;
  const double band = band_fraction * std::abs(traj.target);
  auto out_of_band = [&](std::size_t i) { return std::abs(s[i].alpha - final_ref) > band; };

  // Settling window: [step_time, disturbance start or end of run].
  const double window_end = traj.disturbance_start.value_or(s.back().t + 1.0);
  std::size_t first = 0;
  while (first < n && s[first].t < traj.step_time - kTimeEps) ++first;
  std::size_t last = first;
  while (last < n && s[last].t < window_end - kTimeEps) ++last;  // one past the end
  if (first >= last) {
    m.settled = false;
    m.settling_time = 0.0;
  } else {
    std::optional<std::size_t> last_out;
    for (std::size_t i = first; i < last; ++i) {
      if (out_of_band(i)) last_out = i;
    }
    if (!last_out) {
      m.settled = true;
      m.settling_time = 0.0;
    } else if (*last_out + 1 >= last) {
      m.settled = false;
      m.settling_time = s[last - 1].t - traj.step_time;
    } else {
      m.settled = true;
      m.settling_time = s[*last_out + 1].t - traj.step_time;
    }
  }

  double peak = 0.0;
  const double peak_from = traj.disturbance_start.value_or(traj.step_time);
  for (const auto& x : s) {
    if (x.t >= peak_from - kTimeEps) peak = std::max(peak, std::abs(x.alpha - x.alpha_ref));
  }
  m.peak_error = peak;

  if (traj.disturbance_end) {
    const double dist_end = *traj.disturbance_end;
    std::optional<std::size_t> last_out;
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i].t >= dist_end - kTimeEps && out_of_band(i)) last_out = i;
    }
    if (!last_out) {
      m.recovered = s.back().t >= dist_end - kTimeEps;
      if (m.recovered) m.recovery_time = dist_end;
    } else if (*last_out + 1 < n) {
      m.recovered = true;
      m.recovery_time = s[*last_out + 1].t;
    }
  }
  return m;
}

std::vector<SuiteRow> run_suite(std::span<const Scenario> scenarios,
                                const WristParams& params, const MpcConfig& config,
                                bool parallel) {
  if (scenarios.empty()) throw Error(ErrorCode::kInvalidArgument, "empty scenario list");
  auto run_one = [&](const Scenario& sc) {
    SuiteRow row;
    row.scenario = sc.name;
    try {
      row.result = run_closed_loop(sc, params, config);
      if (!row.result.trajectory.samples.empty()) {
        row.metrics = compute_metrics(row.result.trajectory);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  };

  std::vector<SuiteRow> rows;
  rows.reserve(scenarios.size());
  if (!parallel) {
    for (const Scenario& sc : scenarios) rows.push_back(run_one(sc));
    return rows;
  }
  std::vector<std::future<SuiteRow>> jobs;
  for (const Scenario& sc : scenarios) {
    jobs.push_back(std::async(std::launch::async, run_one, std::cref(sc)));
  }
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

}  // namespace softwrist
