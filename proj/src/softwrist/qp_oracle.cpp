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

#include "softwrist/qp_oracle.hpp"

#include <bit>
#include <random>

#include "softwrist/error.hpp"

namespace softwrist {

OracleResult enumerate_active_sets(const QpProblem& p) {
  validate(p);
  const int n = static_cast<int>(p.hessian.rows());
  const int m = static_cast<int>(p.a_in.rows());
  if (m > 20) {
    throw Error(ErrorCode::kInvalidArgument, "enumeration limited to 20 constraints");
  }

  OracleResult best;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const int k = std::popcount(mask);
    if (k > n) continue;
    std::vector<int> rows;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) rows.push_back(i);
    }
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
    Eigen::VectorXd rhs(n + k);
    kkt.topLeftCorner(n, n) = p.hessian;
    rhs.head(n) = -p.linear;
    for (int a = 0; a < k; ++a) {
      kkt.block(0, n + a, n, 1) = p.a_in.row(rows[a]).transpose();
      kkt.block(n + a, 0, 1, n) = p.a_in.row(rows[a]);
      rhs(n + a) = p.b_in(rows[a]);
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd z = sol.head(n);
    const Eigen::VectorXd mult = sol.tail(k);

    if (k > 0 && mult.minCoeff() < -1e-9) continue;
    if (m > 0 && ((p.a_in * z - p.b_in).array() > 1e-9).any()) continue;

    const double obj = qp_objective(p, z);
    if (!best.feasible || obj < best.objective) {
      best.feasible = true;
      best.z = z;
      best.objective = obj;
      best.active_set = rows;
      best.lambda = Eigen::VectorXd::Zero(m);
      for (int a = 0; a < k; ++a) best.lambda(rows[a]) = mult(a);
    }
  }
  return best;
}

QpProblem random_feasible_qp(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> margin(0.05, 1.0);
  auto randn = [&](int rows, int cols) {
    Eigen::MatrixXd out(rows, cols);
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) out(i, j) = normal(rng);
    }
    return out;
  };

  QpProblem p;
  const Eigen::MatrixXd b = randn(n, n);
  p.hessian = b.transpose() * b + 0.1 * Eigen::MatrixXd::Identity(n, n);
  p.hessian = 0.5 * (p.hessian + p.hessian.transpose()).eval();
  p.linear = 3.0 * randn(n, 1);
  p.a_in = randn(m, n);
  const Eigen::VectorXd interior = 0.5 * randn(n, 1);
  p.b_in = p.a_in * interior;
  for (int i = 0; i < m; ++i) p.b_in(i) += margin(rng);
  return p;
}

}  // namespace softwrist
