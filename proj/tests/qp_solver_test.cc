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

#include "softwrist/qp_solver.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "softwrist/error.hpp"
#include "softwrist/qp_oracle.hpp"

namespace softwrist {
namespace {

QpProblem Scalar(double h, double f, std::vector<double> a, std::vector<double> b) {
  QpProblem p;
  p.hessian = Eigen::MatrixXd::Constant(1, 1, h);
  p.linear = Eigen::VectorXd::Constant(1, f);
  p.a_in = Eigen::Map<Eigen::MatrixXd>(a.data(), static_cast<Eigen::Index>(a.size()), 1);
  p.b_in = Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  return p;
}

TEST(QpSolverTest, UnconstrainedMinimizer) {
  QpProblem p;
  p.hessian = Eigen::MatrixXd::Identity(2, 2);
  p.linear = Eigen::Vector2d(-1.0, -1.0);
  p.a_in = Eigen::MatrixXd(0, 2);
  p.b_in = Eigen::VectorXd(0);
  const QpSolution sol = QpSolver().solve(p);
  EXPECT_EQ(sol.status, QpStatus::kSolved);
  EXPECT_NEAR(sol.z(0), 1.0, 1e-15);
  EXPECT_NEAR(sol.z(1), 1.0, 1e-15);
  EXPECT_TRUE(sol.active_set.empty());
}

TEST(QpSolverTest, SingleActiveBound) {
  // 1/2 z^2 - 2 z subject to z <= 1.
  const QpProblem p = Scalar(1.0, -2.0, {1.0}, {1.0});
  const QpSolution sol = QpSolver().solve(p);
  ASSERT_EQ(sol.status, QpStatus::kSolved);
  EXPECT_NEAR(sol.z(0), 1.0, 1e-14);
  EXPECT_NEAR(sol.lambda(0), 1.0, 1e-14);
  EXPECT_EQ(sol.active_set, std::vector<int>{0});
}

TEST(QpSolverTest, InfeasibleBoxReported) {
  // z <= -1 and z >= 1.
  const QpProblem p = Scalar(1.0, 0.0, {1.0, -1.0}, {-1.0, -1.0});
  EXPECT_EQ(QpSolver().solve(p).status, QpStatus::kInfeasible);
}

TEST(QpSolverTest, RejectsIndefiniteHessian) {
  const QpProblem p = Scalar(-1.0, 0.0, {1.0}, {1.0});
  EXPECT_THROW(QpSolver().solve(p), Error);
}

TEST(QpSolverTest, RejectsDimensionMismatch) {
  QpProblem p = Scalar(1.0, 0.0, {1.0}, {1.0});
  p.b_in = Eigen::VectorXd::Zero(2);
  EXPECT_THROW(QpSolver().solve(p), Error);
}

TEST(QpSolverTest, RejectsOutOfRangeWarmStart) {
  const QpProblem p = Scalar(1.0, 0.0, {1.0}, {1.0});
  const std::vector<int> warm{3};
  EXPECT_THROW(QpSolver().solve(p, warm), Error);
}

TEST(QpSolverTest, MatchesEnumerationOnSmallProblems) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const QpProblem p = random_feasible_qp(4, 6, seed);
    const OracleResult oracle = enumerate_active_sets(p);
    ASSERT_TRUE(oracle.feasible) << "seed " << seed;
    const QpSolution sol = QpSolver().solve(p);
    ASSERT_EQ(sol.status, QpStatus::kSolved) << "seed " << seed;
    EXPECT_NEAR(sol.objective, oracle.objective, 1e-7 * (1.0 + std::abs(oracle.objective)))
        << "seed " << seed;
    EXPECT_TRUE(kkt_satisfied(p, kkt_residuals(p, sol))) << "seed " << seed;
    EXPECT_EQ(sol.active_set, oracle.active_set) << "seed " << seed;
  }
}

TEST(QpSolverTest, HotStartFromWrongGuessStillOptimal) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const QpProblem p = random_feasible_qp(5, 9, seed + 1000);
    const std::vector<int> guess{0, 2, 4, 6, 8};
    const QpSolution warm = QpSolver().solve(p, guess);
    const QpSolution cold = QpSolver().solve(p);
    ASSERT_EQ(warm.status, QpStatus::kSolved);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9 * (1.0 + std::abs(cold.objective)));
    EXPECT_TRUE(kkt_satisfied(p, kkt_residuals(p, warm)));
  }
}

TEST(QpSolverTest, WarmStartNeedsNoMoreIterationsThanCold) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const QpProblem p = random_feasible_qp(6, 10, seed + 77);
    const QpSolution base = QpSolver().solve(p);
    ASSERT_EQ(base.status, QpStatus::kSolved);

    QpProblem perturbed = p;
    Eigen::VectorXd dir(p.linear.size());
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = normal(rng);
    perturbed.linear += 0.01 * p.linear.norm() * dir / dir.norm();

    const QpSolution cold = QpSolver().solve(perturbed);
    const QpSolution warm = QpSolver().solve(perturbed, base.active_set);
    ASSERT_EQ(warm.status, QpStatus::kSolved);
    EXPECT_LE(warm.iterations, cold.iterations) << "seed " << seed;
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9 * (1.0 + std::abs(cold.objective)));
  }
}

TEST(QpSolverTest, RepeatedSolvesAreBitIdentical) {
  const QpProblem p = random_feasible_qp(8, 12, 99);
  QpSolver solver;
  const QpSolution a = solver.solve(p);
  const QpSolution b = solver.solve(p);
  const QpSolution c = QpSolver().solve(p);
  for (Eigen::Index i = 0; i < a.z.size(); ++i) {
    EXPECT_EQ(a.z(i), b.z(i));
    EXPECT_EQ(a.z(i), c.z(i));
  }
  EXPECT_EQ(a.active_set, b.active_set);
}

}  // namespace
}  // namespace softwrist
