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

// Closed-loop simulation: RK4 plant at dt_sim, controller every Ts with the
// tendon force held in between, optional rectangular disturbance torque, and
// step-response metrics.

#ifndef SOFTWRIST_SIM_HARNESS_HPP_
#define SOFTWRIST_SIM_HARNESS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softwrist/dynamics.hpp"
#include "softwrist/mpc_controller.hpp"

namespace softwrist {

// In the planar model the four directions are relabelled copies of the same
// alpha dynamics; the direction only fixes the bending plane gamma.
enum class Direction { kRadial, kUlnar, kFlexion, kExtension };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view name);
double bending_plane(Direction d);  // gamma, rad

struct Disturbance {
  double force = 2.0;         // N, positive pushes towards larger alpha
  double start_time = 2.0;    // s
  double duration = 0.05;     // s
  std::optional<double> moment_arm;  // m, defaults to the backbone length
};

struct Scenario {
  std::string name;
  Direction direction = Direction::kUlnar;
  double target = 0.610865;  // rad (35 deg)
  double step_time = 0.0;    // s
  double duration = 5.0;     // s
  double dt_sim = 1e-3;      // s
  std::optional<Disturbance> disturbance;
};

// Throws Error(kInvalidArgument). Ts must be an integer multiple of dt_sim.
void validate(const Scenario& scenario, const MpcConfig& config);

// Presets: "<direction>-step" and "<direction>-disturbance" for direction in
// radial, ulnar, flexion, extension.
std::optional<Scenario> scenario_preset(std::string_view name);
std::vector<std::string> scenario_names();

struct TrajectorySample {
  double t;
  double alpha_ref;
  double alpha;
  double alpha_dot_ref;
  double alpha_dot;
  double y;
  double force;
  double eps;
  int qp_iters;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;
  double step_time = 0.0;
  double target = 0.0;
  std::optional<double> disturbance_start;
  std::optional<double> disturbance_end;
};

enum class RunStatus { kCompleted, kDiverged };

struct RunResult {
  Trajectory trajectory;
  RunStatus status = RunStatus::kCompleted;
  std::string diagnostic;
  int solver_fallbacks = 0;
};

// Divergence (non-finite state or alpha outside [-0.1, pi/2]) stops the run
// early with status kDiverged; the samples up to that point are kept.
RunResult run_closed_loop(const Scenario& scenario, const WristParams& params,
                          const MpcConfig& config);

struct Metrics {
  double rmse = 0.0;
  double settling_time = 0.0;  // from the step time
  bool settled = false;
  double steady_state_error = 0.0;
  double peak_error = 0.0;
  std::optional<double> recovery_time;  // absolute time, disturbance runs only
  bool recovered = false;
};

inline constexpr double kDefaultBandFraction = 0.02;

// Band = band_fraction * |target|. Settling is measured up to the disturbance
// start when there is one. Throws Error(kInvalidArgument) on an empty
// trajectory.
Metrics compute_metrics(const Trajectory& traj,
                        double band_fraction = kDefaultBandFraction);

struct SuiteRow {
  std::string scenario;
  RunResult result;
  Metrics metrics;
  std::string error;  // non-empty if the scenario threw
  bool ok() const {
    return error.empty() && result.status == RunStatus::kCompleted && metrics.settled &&
           (!result.trajectory.disturbance_start || metrics.recovered);
  }
};

// Rows come back in input order whether or not they ran in parallel.
std::vector<SuiteRow> run_suite(std::span<const Scenario> scenarios,
                                const WristParams& params, const MpcConfig& config,
                                bool parallel = true);

}  // namespace softwrist

#endif  // SOFTWRIST_SIM_HARNESS_HPP_
