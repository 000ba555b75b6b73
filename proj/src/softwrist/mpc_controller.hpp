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

// Inverse-dynamics MPC.
//
// Feedback linearisation F = D^-1 (M y + C alpha_dot^2 + K alpha) turns the
// wrist into the double integrator alpha_ddot = y. The MPC plans increments
// of the virtual acceleration y over that model with state x = (alpha_dot,
// alpha), a soft |alpha| bound (slack epsilon) and a hard bound on each
// increment. Moves past the control horizon are held.

#ifndef SOFTWRIST_MPC_CONTROLLER_HPP_
#define SOFTWRIST_MPC_CONTROLLER_HPP_

#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "softwrist/dynamics.hpp"
#include "softwrist/qp_solver.hpp"

namespace softwrist {

struct MpcConfig {
  int prediction_horizon = 10;  // p
  int control_horizon = 5;      // nu
  double sample_time = 0.02;    // Ts, s
  double weight_alpha = 1.0;
  double weight_alpha_dot = 0.05;
  double weight_du = 0.02;
  double scale_alpha = 1.0;
  double scale_alpha_dot = 1.0;
  double scale_u = 1.0;
  double slack_penalty = 1e5;  // rho_eps
  double alpha_max = std::numbers::pi / 4;
  double du_max = 5.0;  // rad/s^2 per interval
};

// Throws Error(kInvalidArgument).
void validate(const MpcConfig& config);

// Zero-order-hold discretisation of alpha_ddot = u with x = (alpha_dot, alpha).
struct DiscreteModel {
  Eigen::Matrix2d a;
  Eigen::Vector2d b;
  Eigen::Matrix2d c;
};

DiscreteModel discretize_model(double sample_time);

struct Reference {
  double alpha = 0.0;
  double alpha_dot = 0.0;
};

// z = (du_0 .. du_{nu-1}, eps). Constraint rows: 2 per prediction step for
// +/- alpha, then 2 per move for +/- du, then -eps <= 0.
struct QpLayout {
  int n_moves = 0;
  int slack_index = 0;
  int position_rows = 0;  // first row of the rate block
  int rate_rows = 0;
};

struct MpcQp {
  QpProblem problem;
  QpLayout layout;
  double constant_cost = 0.0;  // J(z) = qp objective + constant_cost
};

// ref holds the references for steps k+1 .. k+p. Throws
// Error(kInvalidArgument) on a length mismatch.
MpcQp build_qp(const MpcConfig& config, const Eigen::Vector2d& x_now,
               std::span<const Reference> ref, double prev_u);

// Predicted states x(k+1) .. x(k+p) for the given increments (size nu).
std::vector<Eigen::Vector2d> predict(const MpcConfig& config,
                                     const Eigen::Vector2d& x_now, double prev_u,
                                     std::span<const double> moves);

struct ControllerState {
  double prev_u = 0.0;
  bool has_prediction = false;
  Eigen::Vector2d predicted_state = Eigen::Vector2d::Zero();  // (alpha_dot, alpha)
  std::vector<int> warm_start;
};

struct StepDiagnostics {
  QpStatus qp_status = QpStatus::kSolved;
  bool fallback = false;  // solver failed, y held at prev_u
  int qp_iterations = 0;
  int active_set_size = 0;
  double slack = 0.0;
  double delta_u0 = 0.0;
};

struct MpcOutput {
  double y = 0.0;              // commanded acceleration, rad/s^2
  double alpha_hat = 0.0;      // state the plan was made from
  double alpha_dot_hat = 0.0;
  StepDiagnostics diagnostics;
};

// One control interval. The QP starts from the one-step-ahead prediction made
// at the previous interval (the measurement on the first call); afterwards
// the prediction is refreshed by rolling the model forward from x_measured.
MpcOutput mpc_step(const MpcConfig& config, ControllerState& state,
                   QpSolver& solver, const Eigen::Vector2d& x_measured,
                   std::span<const Reference> ref);

// Tendon force realising alpha_ddot = y at the estimated state.
double feedback_linearize(double y, double alpha_hat, double alpha_dot_hat,
                          const WristParams& params);

class MpcController {
 public:
  explicit MpcController(const MpcConfig& config);

  MpcOutput step(const Eigen::Vector2d& x_measured, std::span<const Reference> ref) {
    return mpc_step(config_, state_, solver_, x_measured, ref);
  }
  const ControllerState& state() const { return state_; }
  const MpcConfig& config() const { return config_; }

 private:
  MpcConfig config_;
  ControllerState state_;
  QpSolver solver_;
};

}  // namespace softwrist

#endif  // SOFTWRIST_MPC_CONTROLLER_HPP_
