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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "softwrist/error.hpp"

namespace softwrist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// A constraint counts as violated below -kFeasTol * (1 + |b_i|).
constexpr double kFeasTol = 1e-11;
// Relative size below which a step direction is treated as zero.
constexpr double kDependentTol = 1e-10;

struct Givens {
  double c;
  double s;
};

// Rotation mapping (a, b) to (hypot(a, b), 0).
Givens make_givens(double a, double b) {
  const double h = std::hypot(a, b);
  if (h == 0.0) return {1.0, 0.0};
  return {a / h, b / h};
}

void rotate_columns(Eigen::MatrixXd& m, int i, int j, Givens g) {
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    const double a = m(row, i), b = m(row, j);
    m(row, i) = g.c * a + g.s * b;
    m(row, j) = -g.s * a + g.c * b;
  }
}

}  // namespace

std::string_view to_string(QpStatus status) {
  switch (status) {
    case QpStatus::kSolved:
      return "solved";
    case QpStatus::kMaxIterations:
      return "max_iterations";
    case QpStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

void validate(const QpProblem& p) {
  const Eigen::Index n = p.hessian.rows();
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "QpProblem: " + what);
  };
  if (n == 0 || p.hessian.cols() != n) fail("Hessian must be square and non-empty");
  if (p.linear.size() != n) fail("linear term has wrong size");
  if (p.a_in.rows() != p.b_in.size()) fail("A_in rows differ from b_in size");
  if (p.a_in.rows() > 0 && p.a_in.cols() != n) fail("A_in has wrong column count");
  if (!p.hessian.allFinite() || !p.linear.allFinite() || !p.a_in.allFinite() ||
      !p.b_in.allFinite()) {
    fail("non-finite data");
  }
  const double asym = (p.hessian - p.hessian.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, p.hessian.cwiseAbs().maxCoeff())) {
    fail("Hessian is not symmetric");
  }
}

double qp_objective(const QpProblem& p, const Eigen::VectorXd& z) {
  return 0.5 * z.dot(p.hessian * z) + p.linear.dot(z);
}

KktResiduals kkt_residuals(const QpProblem& p, const QpSolution& sol) {
  KktResiduals r{};
  Eigen::VectorXd grad = p.hessian * sol.z + p.linear;
  if (p.a_in.rows() > 0) {
    grad += p.a_in.transpose() * sol.lambda;
    const Eigen::VectorXd slack = p.a_in * sol.z - p.b_in;
    r.primal = std::max(0.0, slack.maxCoeff());
    r.dual = std::max(0.0, -sol.lambda.minCoeff());
    r.complementarity = sol.lambda.cwiseProduct(slack).cwiseAbs().maxCoeff();
  }
  r.stationarity = grad.cwiseAbs().maxCoeff();
  return r;
}

bool kkt_satisfied(const QpProblem& p, const KktResiduals& r) {
  return r.stationarity <= 1e-8 * (1.0 + p.linear.norm()) && r.primal <= 1e-9 &&
         r.dual == 0.0 && r.complementarity <= 1e-8;
}

void QpSolver::add_constraint(const Eigen::VectorXd& d_in) {
  Eigen::VectorXd d = d_in;
  const int n = static_cast<int>(j_.rows());
  for (int j = n - 1; j > q_; --j) {
    const Givens g = make_givens(d(j - 1), d(j));
    d(j - 1) = g.c * d(j - 1) + g.s * d(j);
    d(j) = 0.0;
    rotate_columns(j_, j - 1, j, g);
  }
  r_.col(q_).head(q_ + 1) = d.head(q_ + 1);
  ++q_;
}

void QpSolver::drop_constraint(int position) {
  for (int j = position; j < q_ - 1; ++j) {
    r_.col(j).head(j + 2) = r_.col(j + 1).head(j + 2);
  }
  for (int j = position; j < q_ - 1; ++j) {
    const Givens g = make_givens(r_(j, j), r_(j + 1, j));
    for (int col = j; col < q_ - 1; ++col) {
      const double a = r_(j, col), b = r_(j + 1, col);
      r_(j, col) = g.c * a + g.s * b;
      r_(j + 1, col) = -g.s * a + g.c * b;
    }
    r_(j + 1, j) = 0.0;
    rotate_columns(j_, j, j + 1, g);
  }
  r_.col(q_ - 1).setZero();
  active_.erase(active_.begin() + position);
  for (int j = position; j < q_ - 1; ++j) u_(j) = u_(j + 1);
  u_(q_ - 1) = 0.0;
  --q_;
}

// Minimiser with every active constraint held as an equality, and its
// multipliers, computed from the current factorisation.
void QpSolver::solve_on_active_set(const QpProblem& p) {
  if (q_ == 0) {
    x_ = x_unconstrained_;
    return;
  }
  Eigen::VectorXd rhs(q_);
  for (int k = 0; k < q_; ++k) {
    const int i = active_[k];
    // b'_i - n_i' x_unc with n_i = -a_i, b'_i = -b_i.
    rhs(k) = -(p.b_in(i) - p.a_in.row(i).dot(x_unconstrained_));
  }
  const auto r = r_.topLeftCorner(q_, q_).triangularView<Eigen::Upper>();
  const Eigen::VectorXd w = r.transpose().solve(rhs);
  x_ = x_unconstrained_ + j_.leftCols(q_) * w;
  u_.head(q_) = r.solve(w);
}

QpSolution QpSolver::solve(const QpProblem& p, std::span<const int> warm_start) {
  validate(p);
  const int n = static_cast<int>(p.hessian.rows());
  const int m = static_cast<int>(p.a_in.rows());
  for (int w : warm_start) {
    if (w < 0 || w >= m) {
      throw Error(ErrorCode::kInvalidArgument,
                  "warm-start index " + std::to_string(w) + " out of range");
    }
  }

  llt_.compute(p.hessian);
  if (llt_.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument, "Hessian is not positive definite");
  }
  j_ = llt_.matrixU().solve(Eigen::MatrixXd::Identity(n, n));
  r_ = Eigen::MatrixXd::Zero(n, n);
  u_ = Eigen::VectorXd::Zero(n);
  x_unconstrained_ = llt_.solve(-p.linear);
  x_ = x_unconstrained_;
  active_.clear();
  q_ = 0;

  std::vector<char> is_active(m, 0);
  const int max_iterations = 3 * (n + m);
  int iterations = 0;
  QpStatus status = QpStatus::kSolved;

  // Hot start: take the guessed constraints as equalities, then release those
  // whose multipliers come out negative until the pair is dual feasible.
  for (int w : warm_start) {
    if (is_active[w] || q_ == n) continue;
    const Eigen::VectorXd d = j_.transpose() * (-p.a_in.row(w).transpose());
    if (d.tail(n - q_).norm() <= kDependentTol * d.norm()) continue;
    add_constraint(d);
    active_.push_back(w);
    is_active[w] = 1;
  }
  solve_on_active_set(p);
  while (q_ > 0) {
    Eigen::Index worst = 0;
    if (u_.head(q_).minCoeff(&worst) >= 0.0) break;
    is_active[active_[worst]] = 0;
    drop_constraint(static_cast<int>(worst));
    ++iterations;
    solve_on_active_set(p);
  }

  for (;;) {
    int p_idx = -1;
    double most_violated = 0.0;
    for (int i = 0; i < m; ++i) {
      if (is_active[i]) continue;
      const double s = p.b_in(i) - p.a_in.row(i).dot(x_);
      if (s < -kFeasTol * (1.0 + std::abs(p.b_in(i))) && s < most_violated) {
        most_violated = s;
        p_idx = i;
      }
    }
    if (p_idx < 0) break;
    if (iterations >= max_iterations) {
      status = QpStatus::kMaxIterations;
      break;
    }

    const Eigen::VectorXd normal = -p.a_in.row(p_idx).transpose();
    double u_new = 0.0;
    bool added = false;
    while (!added) {
      if (iterations >= max_iterations) {
        status = QpStatus::kMaxIterations;
        break;
      }
      const Eigen::VectorXd d = j_.transpose() * normal;
      const Eigen::VectorXd z = j_.rightCols(n - q_) * d.tail(n - q_);
      Eigen::VectorXd r = Eigen::VectorXd::Zero(q_);
      if (q_ > 0) {
        r = r_.topLeftCorner(q_, q_).triangularView<Eigen::Upper>().solve(d.head(q_));
      }

      double t1 = kInf;
      int k_drop = -1;
      for (int j = 0; j < q_; ++j) {
        if (r(j) > 0.0) {
          const double ratio = u_(j) / r(j);
          if (ratio < t1) {
            t1 = ratio;
            k_drop = j;
          }
        }
      }
      double t2 = kInf;
      const double dz = d.tail(n - q_).norm();
      if (dz > kDependentTol * d.norm()) {
        const double slack = p.b_in(p_idx) - p.a_in.row(p_idx).dot(x_);
        t2 = -slack / z.dot(normal);
      }

      if (t1 == kInf && t2 == kInf) {
        status = QpStatus::kInfeasible;
        break;
      }
      if (t2 == kInf) {
        // Dual-only step: the normal is spanned by the active set.
        u_.head(q_) -= t1 * r;
        u_new += t1;
        is_active[active_[k_drop]] = 0;
        drop_constraint(k_drop);
        ++iterations;
        continue;
      }

      const double t = std::min(t1, t2);
      x_ += t * z;
      u_.head(q_) -= t * r;
      u_new += t;
      if (t2 <= t1) {
        add_constraint(d);
        active_.push_back(p_idx);
        is_active[p_idx] = 1;
        u_(q_ - 1) = u_new;
        added = true;
      } else {
        is_active[active_[k_drop]] = 0;
        drop_constraint(k_drop);
      }
      ++iterations;
    }
    if (status != QpStatus::kSolved) break;
  }

  QpSolution sol;
  sol.z = x_;
  sol.lambda = Eigen::VectorXd::Zero(m);
  for (int k = 0; k < q_; ++k) sol.lambda(active_[k]) = std::max(0.0, u_(k));
  sol.active_set = active_;
  std::sort(sol.active_set.begin(), sol.active_set.end());
  sol.status = status;
  sol.iterations = iterations;
  sol.objective = qp_objective(p, x_);
  return sol;
}

}  // namespace softwrist
