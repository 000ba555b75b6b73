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

// Brute-force reference for small QPs: every subset of constraints is tried
// as the active set, the equality-constrained KKT system is solved with a
// pivoted LU, and the best primal- and dual-feasible candidate wins. Shares
// no code with QpSolver. Cost is O(2^m) and the enumeration refuses m > 20.

#ifndef SOFTWRIST_QP_ORACLE_HPP_
#define SOFTWRIST_QP_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "softwrist/qp_solver.hpp"

namespace softwrist {

struct OracleResult {
  bool feasible = false;
  Eigen::VectorXd z;
  Eigen::VectorXd lambda;
  std::vector<int> active_set;
  double objective = 0.0;
};

OracleResult enumerate_active_sets(const QpProblem& problem);

// Random strictly convex problem with n variables and m constraints that is
// feasible by construction (a random interior point satisfies every row).
QpProblem random_feasible_qp(int n, int m, std::uint64_t seed);

}  // namespace softwrist

#endif  // SOFTWRIST_QP_ORACLE_HPP_
