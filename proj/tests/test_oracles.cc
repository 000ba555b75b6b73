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

#include "test_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace softwrist::oracle {
namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

CurvatureState run_free(const WristParams& p, CurvatureState s, double dt, double t_end) {
  const long n = std::lround(t_end / dt);
  for (long i = 0; i < n; ++i) s = integrate_step(s, 0.0, 0.0, dt, p);
  return s;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 30);
}

double k1_quadrature(double alpha) {
  // Planar arc of unit length: x = (1 - cos(alpha s)) / alpha,
  // z = sin(alpha s) / alpha.
  auto integrand = [alpha](double s) {
    const double phi = alpha * s;
    const double dx = -(1 - std::cos(phi)) / (alpha * alpha) + s * std::sin(phi) / alpha;
    const double dz = -std::sin(phi) / (alpha * alpha) + s * std::cos(phi) / alpha;
    return dx * dx + dz * dz;
  };
  return 3.0 * adaptive_simpson(integrand, 0.0, 1.0, 1e-13);
}

double richardson_ratio(const WristParams& p) {
  const CurvatureState start{0.3};
  const double ref = run_free(p, start, 1e-3 / 16, 1.0).alpha;
  const double e2 = std::abs(run_free(p, start, 2e-3, 1.0).alpha - ref);
  const double e1 = std::abs(run_free(p, start, 1e-3, 1.0).alpha - ref);
  return e2 / e1;
}

double energy_drift(const WristParams& p, double amplitude) {
  CurvatureState s{amplitude};
  const double e0 = mechanical_energy(s, p);
  double worst = 0.0;
  for (int i = 0; i < 5000; ++i) {
    s = integrate_step(s, 0.0, 0.0, 1e-3, p);
    worst = std::max(worst, std::abs(mechanical_energy(s, p) - e0));
  }
  return worst / e0;
}

double first_integral_drift(const WristParams& p, double amplitude) {
  // alpha_dot^2 / M(alpha) + int_0^alpha 2 K x / M(x)^2 dx is invariant along
  // free motion of M alpha_ddot + C alpha_dot^2 + K alpha = 0 when C = -M'/2.
  auto invariant = [&p](const CurvatureState& s) {
    const double k = planar_coefficients(0.0, p).stiffness;
    // Composite Simpson; the integrand is a smooth rational function.
    const int n = 2000;
    const double h = s.alpha / n;
    auto f = [&](double x) {
      const double m = planar_coefficients(x, p).inertia;
      return 2 * k * x / (m * m);
    };
    double potential = f(0.0) + f(s.alpha);
    for (int i = 1; i < n; ++i) potential += (i % 2 ? 4.0 : 2.0) * f(i * h);
    potential *= h / 3;
    return s.alpha_dot * s.alpha_dot / planar_coefficients(s.alpha, p).inertia + potential;
  };
  CurvatureState s{amplitude};
  const double e0 = invariant(s);
  double worst = 0.0;
  for (int i = 1; i <= 5000; ++i) {
    s = integrate_step(s, 0.0, 0.0, 1e-3, p);
    if (i % 50 == 0) worst = std::max(worst, std::abs(invariant(s) - e0));
  }
  return worst / e0;
}

double oscillation_frequency(const WristParams& p, double amplitude) {
  const double dt = 1e-5;
  CurvatureState s{amplitude};
  std::vector<double> crossings;
  for (int i = 0; i < 200000; ++i) {
    const CurvatureState next = integrate_step(s, 0.0, 0.0, dt, p);
    if ((s.alpha > 0) != (next.alpha > 0)) {
      crossings.push_back(i * dt + dt * s.alpha / (s.alpha - next.alpha));
    }
    s = next;
  }
  if (crossings.size() < 2) return 0.0;
  const double half_periods = static_cast<double>(crossings.size() - 1);
  return std::numbers::pi * half_periods / (crossings.back() - crossings.front());
}

Eigen::MatrixXd expm_series(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k < 30; ++k) {
    term = term * m / k;
    sum += term;
  }
  return sum;
}

double unconstrained_first_move(const MpcConfig& c, const Eigen::Vector2d& x_now,
                                std::span<const Reference> ref, double prev_u) {
  const int p = c.prediction_horizon;
  const double ts = c.sample_time;
  // x(k+i) = A^i x + sum_{j<i} A^(i-1-j) B u_j with u_j = prev_u + sum_{m<=j} du_m.
  Eigen::Matrix2d a;
  a << 1, 0, ts, 1;
  const Eigen::Vector2d b(ts, ts * ts / 2);

  Eigen::MatrixXd phi(2 * p, 2), gamma_u = Eigen::MatrixXd::Zero(2 * p, p);
  Eigen::Matrix2d ai = Eigen::Matrix2d::Identity();
  std::vector<Eigen::Matrix2d> powers(p + 1);
  powers[0] = ai;
  for (int i = 1; i <= p; ++i) powers[i] = powers[i - 1] * a;
  for (int i = 0; i < p; ++i) {
    phi.block<2, 2>(2 * i, 0) = powers[i + 1];
    for (int j = 0; j <= i; ++j) gamma_u.block<2, 1>(2 * i, j) = powers[i - j] * b;
  }
  Eigen::MatrixXd cumulative = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) cumulative.row(i).head(i + 1).setOnes();
  const Eigen::MatrixXd g = gamma_u * cumulative;

  Eigen::VectorXd target(2 * p), w(2 * p);
  for (int i = 0; i < p; ++i) {
    target(2 * i) = ref[i].alpha_dot;
    target(2 * i + 1) = ref[i].alpha;
    w(2 * i) = std::pow(c.weight_alpha_dot / c.scale_alpha_dot, 2);
    w(2 * i + 1) = std::pow(c.weight_alpha / c.scale_alpha, 2);
  }
  const Eigen::VectorXd free = phi * x_now + gamma_u * Eigen::VectorXd::Constant(p, prev_u);
  const Eigen::MatrixXd lhs = g.transpose() * w.asDiagonal() * g;
  const Eigen::VectorXd rhs = g.transpose() * w.asDiagonal() * (target - free);
  const Eigen::VectorXd du = lhs.colPivHouseholderQr().solve(rhs);
  return prev_u + du(0);
}

}  // namespace softwrist::oracle
