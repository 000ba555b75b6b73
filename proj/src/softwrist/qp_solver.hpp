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

// Dense strictly convex QP
//
//   minimize   1/2 z' H z + f' z
//   subject to A z <= b
//
// solved with a KWIK-style dual active-set method (Goldfarb-Idnani): the
// Hessian is Cholesky-factored once, and the factorisation of the active
// constraint normals is updated with Givens rotations whenever a constraint
// enters or leaves. The solver accepts an active-set guess and hot-starts
// from it, which is what the MPC uses between control intervals.

#ifndef SOFTWRIST_QP_SOLVER_HPP_
#define SOFTWRIST_QP_SOLVER_HPP_

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace softwrist {

struct QpProblem {
  Eigen::MatrixXd hessian;  // n x n, symmetric positive definite
  Eigen::VectorXd linear;   // n
  Eigen::MatrixXd a_in;     // m x n
  Eigen::VectorXd b_in;     // m
};

enum class QpStatus { kSolved, kMaxIterations, kInfeasible };

std::string_view to_string(QpStatus status);

struct QpSolution {
  Eigen::VectorXd z;
  Eigen::VectorXd lambda;       // m, zero off the active set
  std::vector<int> active_set;  // ascending
  QpStatus status = QpStatus::kSolved;
  int iterations = 0;  // working-set changes after the initial (hot-start) set
  double objective = 0.0;
};

// Throws Error(kInvalidArgument) on inconsistent dimensions, a non-symmetric
// Hessian, or non-finite data.
void validate(const QpProblem& problem);

double qp_objective(const QpProblem& problem, const Eigen::VectorXd& z);

struct KktResiduals {
  double stationarity;     // ||H z + f + A' lambda||_inf
  double primal;           // max(A z - b, 0)
  double dual;             // max(-lambda, 0)
  double complementarity;  // max |lambda_i (A z - b)_i|
};

KktResiduals kkt_residuals(const QpProblem& problem, const QpSolution& sol);

// True when the residuals are inside the solver's acceptance tolerances:
// stationarity <= 1e-8 (1 + ||f||), primal <= 1e-9, complementarity <= 1e-8.
bool kkt_satisfied(const QpProblem& problem, const KktResiduals& r);

class QpSolver {
 public:
  // warm_start: constraint indices believed active at the optimum. Indices
  // that are linearly dependent on earlier ones are skipped. Throws
  // Error(kInvalidArgument) if the Hessian is not positive definite or an
  // index is out of range.
  QpSolution solve(const QpProblem& problem,
                   std::span<const int> warm_start = {});

 private:
  void add_constraint(const Eigen::VectorXd& d);
  void drop_constraint(int position);
  void solve_on_active_set(const QpProblem& problem);

  // Workspace, reused across solves of equal size.
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd j_;  // L^{-T} Q
  Eigen::MatrixXd r_;  // upper-triangular, leading q x q block in use
  Eigen::VectorXd x_unconstrained_;
  Eigen::VectorXd x_;
  Eigen::VectorXd u_;  // multipliers, one per active position
  std::vector<int> active_;
  int q_ = 0;
};

}  // namespace softwrist

#endif  // SOFTWRIST_QP_SOLVER_HPP_
