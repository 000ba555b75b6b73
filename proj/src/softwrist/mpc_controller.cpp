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

#include "softwrist/mpc_controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "softwrist/error.hpp"

namespace softwrist {

void validate(const MpcConfig& c) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "MpcConfig: " + what);
  };
  if (c.control_horizon < 1) fail("control_horizon must be >= 1");
  if (c.prediction_horizon < c.control_horizon) {
    fail("prediction_horizon must be >= control_horizon");
  }
  if (!(c.sample_time > 0.0)) fail("sample_time must be > 0");
  if (!(c.weight_alpha >= 0.0) || !(c.weight_alpha_dot >= 0.0) || !(c.weight_du >= 0.0)) {
    fail("weights must be >= 0");
  }
  if (!(c.scale_alpha > 0.0) || !(c.scale_alpha_dot > 0.0) || !(c.scale_u > 0.0)) {
    fail("scale factors must be > 0");
  }
  if (!(c.slack_penalty > 0.0)) fail("slack_penalty must be > 0");
  if (!(c.alpha_max > 0.0)) fail("alpha_max must be > 0");
  if (!(c.du_max > 0.0)) fail("du_max must be > 0");
}

DiscreteModel discretize_model(double ts) {
  if (!(ts > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sample time must be > 0");
  DiscreteModel m;
  m.a << 1.0, 0.0, ts, 1.0;
  m.b << ts, 0.5 * ts * ts;
  m.c.setIdentity();
  return m;
}

MpcQp build_qp(const MpcConfig& config, const Eigen::Vector2d& x_now,
               std::span<const Reference> ref, double prev_u) {
  const int p = config.prediction_horizon;
  const int nu = config.control_horizon;
  if (static_cast<int>(ref.size()) != p) {
    throw Error(ErrorCode::kInvalidArgument,
                "reference has " + std::to_string(ref.size()) + " samples, expected " +
                    std::to_string(p));
  }
  const DiscreteModel model = discretize_model(config.sample_time);
  const int n = nu + 1;

  // Output weights in state order (alpha_dot, alpha).
  const Eigen::Vector2d w(std::pow(config.weight_alpha_dot / config.scale_alpha_dot, 2),
                          std::pow(config.weight_alpha / config.scale_alpha, 2));
  const double w_du = std::pow(config.weight_du / config.scale_u, 2);

  MpcQp out;
  out.layout = {nu, nu, 2 * p, 2 * nu};
  QpProblem& qp = out.problem;
  qp.hessian = Eigen::MatrixXd::Zero(n, n);
  qp.linear = Eigen::VectorXd::Zero(n);
  qp.a_in = Eigen::MatrixXd::Zero(2 * p + 2 * nu + 1, n);
  qp.b_in = Eigen::VectorXd::Zero(2 * p + 2 * nu + 1);

  // x_i = free_i + gain_i z; u_i = prev_u + sum_{j <= min(i, nu-1)} du_j.
  Eigen::Vector2d free = x_now;
  Eigen::Matrix<double, 2, Eigen::Dynamic> gain = Eigen::MatrixXd::Zero(2, n);
  for (int i = 0; i < p; ++i) {
    free = model.a * free + model.b * prev_u;
    gain = model.a * gain;
    gain.leftCols(std::min(i, nu - 1) + 1).colwise() += model.b;

    const Eigen::Vector2d err(free(0) - ref[i].alpha_dot, free(1) - ref[i].alpha);
    qp.hessian.noalias() += 2.0 * gain.transpose() * w.asDiagonal() * gain;
    qp.linear.noalias() += 2.0 * gain.transpose() * w.cwiseProduct(err);
    out.constant_cost += err.dot(w.cwiseProduct(err));

    // alpha_i - eps <= alpha_max and -alpha_i - eps <= alpha_max.
    qp.a_in.row(2 * i) = gain.row(1);
    qp.a_in(2 * i, nu) = -1.0;
    qp.b_in(2 * i) = config.alpha_max - free(1);
    qp.a_in.row(2 * i + 1) = -gain.row(1);
    qp.a_in(2 * i + 1, nu) = -1.0;
    qp.b_in(2 * i + 1) = config.alpha_max + free(1);
  }
  for (int j = 0; j < nu; ++j) {
    qp.hessian(j, j) += 2.0 * w_du;
    qp.a_in(2 * p + 2 * j, j) = 1.0;
    qp.b_in(2 * p + 2 * j) = config.du_max;
    qp.a_in(2 * p + 2 * j + 1, j) = -1.0;
    qp.b_in(2 * p + 2 * j + 1) = config.du_max;
  }
  qp.hessian(nu, nu) += 2.0 * config.slack_penalty;
  qp.a_in(2 * p + 2 * nu, nu) = -1.0;

  qp.hessian = (0.5 * (qp.hessian + qp.hessian.transpose())).eval();
  return out;
}

std::vector<Eigen::Vector2d> predict(const MpcConfig& config,
                                     const Eigen::Vector2d& x_now, double prev_u,
                                     std::span<const double> moves) {
  const int nu = config.control_horizon;
  if (static_cast<int>(moves.size()) != nu) {
    throw Error(ErrorCode::kInvalidArgument, "expected one increment per control move");
  }
  const DiscreteModel model = discretize_model(config.sample_time);
  std::vector<Eigen::Vector2d> out;
  Eigen::Vector2d x = x_now;
  double u = prev_u;
  for (int i = 0; i < config.prediction_horizon; ++i) {
    if (i < nu) u += moves[i];
    x = model.a * x + model.b * u;
    out.push_back(x);
  }
  return out;
}

MpcOutput mpc_step(const MpcConfig& config, ControllerState& state,
                   QpSolver& solver, const Eigen::Vector2d& x_measured,
                   std::span<const Reference> ref) {
  const Eigen::Vector2d x_plan = state.has_prediction ? state.predicted_state : x_measured;
  const MpcQp qp = build_qp(config, x_plan, ref, state.prev_u);
  const QpSolution sol = solver.solve(qp.problem, state.warm_start);

  MpcOutput out;
  out.alpha_dot_hat = x_plan(0);
  out.alpha_hat = x_plan(1);
  out.diagnostics.qp_status = sol.status;
  out.diagnostics.qp_iterations = sol.iterations;
  if (sol.status == QpStatus::kSolved) {
    out.diagnostics.delta_u0 = sol.z(0);
    out.diagnostics.slack = sol.z(qp.layout.slack_index);
    out.diagnostics.active_set_size = static_cast<int>(sol.active_set.size());
    out.y = state.prev_u + sol.z(0);
    state.warm_start = sol.active_set;
  } else {
    out.diagnostics.fallback = true;
    out.y = state.prev_u;
    state.warm_start.clear();
  }

  const DiscreteModel model = discretize_model(config.sample_time);
  state.predicted_state = model.a * x_measured + model.b * out.y;
  state.has_prediction = true;
  state.prev_u = out.y;
  return out;
}

double feedback_linearize(double y, double alpha_hat, double alpha_dot_hat,
                          const WristParams& params) {
  const PlanarCoefficients c = planar_coefficients(alpha_hat, params);
  return (c.inertia * y + c.coriolis * alpha_dot_hat * alpha_dot_hat +
          c.stiffness * alpha_hat) /
         c.actuation;
}

MpcController::MpcController(const MpcConfig& config) : config_(config) {
  validate(config_);
}

}  // namespace softwrist
