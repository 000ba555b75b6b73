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

// Acceptance runner: one PASS/FAIL line per criterion. Tolerances are fixed
// here and never read from configuration. Exit status is the number of
// failed criteria (0 = all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "softwrist/dynamics.hpp"
#include "softwrist/kinematics.hpp"
#include "softwrist/mpc_controller.hpp"
#include "softwrist/reports.hpp"
#include "softwrist/sim_harness.hpp"
#include "test_oracles.hpp"

namespace {

using namespace softwrist;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

// Criterion tolerances.
constexpr int kStates = 1000;
constexpr double kOrthoTol = 1e-12;
constexpr double kArcLengthTol = 1e-9;
constexpr double kVelocityTol = 1e-6;
constexpr double kTendonSumTol = 1e-15;  // a few ulps of r*alpha: "exact"
constexpr double kKinematicsSeconds = 5.0;
constexpr double kK1FitTol = 5e-3;
constexpr double kK1ExactVsQuadrature = 1e-10;
constexpr double kEk2Tol = 1e-10;
constexpr double kEnergyDriftTol = 1e-3;  // 0.1 %
constexpr double kRichardsonLo = 12.0, kRichardsonHi = 20.0;
constexpr double kFrequencyTol = 0.01;
constexpr int kQpProblems = 500;
constexpr double kQpSeconds = 30.0;
constexpr double kLinearizationTol = 1e-10;
constexpr double kSimSeconds = 10.0;

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Running maximum that keeps NaN (std::max would silently drop it).
double worse(double acc, double v) { return v > acc || std::isnan(v) ? v : acc; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Arc length by chord sums at n and 2n, Richardson-extrapolated (chord error
// is O(1/n^2)).
double arc_length(const CurvatureState& st, const WristGeometry& g) {
  auto chords = [&](int n) {
    double len = 0.0;
    Eigen::Vector3d prev = backbone_point(st, 0.0, g);
    for (int i = 1; i <= n; ++i) {
      const Eigen::Vector3d p = backbone_point(st, g.length * i / n, g);
      len += (p - prev).norm();
      prev = p;
    }
    return len;
  };
  const double a = chords(1000), b = chords(2000);
  return (4 * b - a) / 3;
}

void criterion1() {
  const auto t0 = Clock::now();
  const WristGeometry g;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> ua(0.05, kPi - 0.05), ug(0.0, 2 * kPi),
      ur(0.1, 2.0), us(0.2, 1.0);
  std::bernoulli_distribution sign;
  double ortho = 0, arc = 0, vel = 0, sum_q = 0, sum_qd = 0;
  for (int i = 0; i < kStates; ++i) {
    const double ad = sign(rng) ? ur(rng) : -ur(rng);
    const double gd = sign(rng) ? ur(rng) : -ur(rng);
    const CurvatureState st{ua(rng), ug(rng), ad, gd};
    const Eigen::Matrix3d r = rotation_matrix(st);
    ortho = worse(ortho,
                     (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    arc = worse(arc, std::abs(arc_length(st, g) / g.length - 1.0));

    const double s = us(rng) * g.length, h = 1e-6;
    const CurvatureState fwd{st.alpha + h * ad, st.gamma + h * gd};
    const CurvatureState bwd{st.alpha - h * ad, st.gamma - h * gd};
    const Eigen::Vector3d fd = (backbone_point(fwd, s, g) - backbone_point(bwd, s, g)) / (2 * h);
    vel = worse(vel, (backbone_velocity(st, s, g) - fd).norm() / fd.norm());

    const auto q = tendon_lengths(st, g);
    const auto qd = tendon_velocities(st, g);
    sum_q = worse(sum_q, std::abs(q[0] + q[1] + q[2]));
    sum_qd = worse(sum_qd, std::abs(qd[0] + qd[1] + qd[2]));
  }
  const double secs = seconds_since(t0);
  const bool pass = ortho <= kOrthoTol && arc <= kArcLengthTol && vel <= kVelocityTol &&
                    sum_q <= kTendonSumTol && sum_qd <= kTendonSumTol &&
                    secs < kKinematicsSeconds;
  report(1, pass, "kinematics property suite",
         fmt("%d states: |R'R-I| %.1e (<=%.0e), arc length %.1e (<=%.0e), velocity vs FD "
             "%.1e (<=%.0e), tendon sums %.1e/%.1e (<=%.0e), %.2f s (<%.0f s)",
             kStates, ortho, kOrthoTol, arc, kArcLengthTol, vel, kVelocityTol, sum_q, sum_qd,
             kTendonSumTol, secs, kKinematicsSeconds));
}

void criterion2() {
  const auto rows = factor_table(0.0, kPi / 4, 1001);
  double fit_err = 0.0;
  for (const auto& r : rows) fit_err = worse(fit_err, r.k1_abs_err);
  // The quadrature oracle is singular at alpha = 0, which the exact-value
  // check below covers.
  double exact_err = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double a = kPi / 4 * i / 50;
    exact_err = worse(exact_err, std::abs(k1_exact(a) - oracle::k1_quadrature(a)));
  }
  const bool at_zero = k1_fit(0.0) == 0.15085 && k2_fit(0.0) == -0.00406 &&
                       k6_fit(0.0) == 0.007175 && k7_fit(0.0) == -0.000235;
  const bool pass = fit_err <= kK1FitTol && exact_err <= kK1ExactVsQuadrature && at_zero;
  report(2, pass, "energy-factor fidelity",
         fmt("max |k1_fit-k1_exact| %.3e (<=%.0e) on 1001 points in [0, pi/4]; k1_exact vs "
             "quadrature %.1e (<=%.0e) on 50 points in (0, pi/4]; fits at 0 exact: %s",
             fit_err, kK1FitTol, exact_err, kK1ExactVsQuadrature, at_zero ? "yes" : "no"));
}

void criterion3() {
  const WristParams p;
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> ua(0.0, kPi / 2), ug(0.0, 2 * kPi), ur(-5.0, 5.0);
  double ek2 = 0.0;
  for (int i = 0; i < kStates; ++i) {
    const CurvatureState s{ua(rng), ug(rng), ur(rng), ur(rng)};
    const auto qd = tendon_velocities(s, p.geom);
    const double expected = 0.5 * p.m2 * (qd[0] * qd[0] + qd[1] * qd[1] + qd[2] * qd[2]);
    ek2 = worse(ek2, std::abs(kinetic_energies(s, p).secondary_driven - expected));
  }
  // The planar coefficient set has C = -M'/2, so (1/2) M a'^2 + E_p is not
  // conserved at large amplitude (it swings by ~5.75 % x amplitude). The
  // energy check therefore uses a small release angle, and the integrator is
  // checked separately on the model's exact first integral at pi/4.
  const double drift = oracle::energy_drift(p, 0.01);
  const double invariant = oracle::first_integral_drift(p, kPi / 4);
  const double ratio = oracle::richardson_ratio(p);
  const PlanarCoefficients c0 = planar_coefficients(0.0, p);
  const double w_expected = std::sqrt(c0.stiffness / c0.inertia);
  const double w = oracle::oscillation_frequency(p, 1e-4);
  const double w_err = std::abs(w / w_expected - 1.0);
  const bool pass = ek2 <= kEk2Tol && drift < kEnergyDriftTol && invariant < kEnergyDriftTol &&
                    ratio >= kRichardsonLo && ratio <= kRichardsonHi && w_err <= kFrequencyTol;
  report(3, pass, "dynamics oracles",
         fmt("Ek2 identity %.1e (<=%.0e); energy drift %.4f %% at 0.01 rad and first-integral "
             "drift %.2e %% at pi/4 (<0.1 %%); RK4 Richardson ratio %.2f (in [%.0f, %.0f]); "
             "frequency %.6f vs %.6f rad/s, error %.2e (<=%.0e)",
             ek2, kEk2Tol, 100 * drift, 100 * invariant, ratio, kRichardsonLo, kRichardsonHi, w,
             w_expected, w_err, kFrequencyTol));
}

void criterion4() {
  const auto t0 = Clock::now();
  const auto rows = qp_selftest(4004, kQpProblems);
  const double secs = seconds_since(t0);
  int bad = 0, kkt_bad = 0, max_n = 0, max_m = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    bad += r.pass ? 0 : 1;
    kkt_bad += r.kkt_ok ? 0 : 1;
    worst = worse(worst, r.rel_error);
    max_n = std::max(max_n, r.n);
    max_m = std::max(max_m, r.m);
  }
  const bool pass = bad == 0 && secs < kQpSeconds && static_cast<int>(rows.size()) == kQpProblems;
  report(4, pass, "QP solver vs active-set enumeration",
         fmt("%zu problems (n<=%d, m<=%d): %d mismatches, %d KKT failures, worst relative "
             "objective error %.1e (<=%.0e), %.2f s (<%.0f s)",
             rows.size(), max_n, max_m, bad, kkt_bad, worst, kSelftestObjectiveTol, secs,
             kQpSeconds));
}

void criterion5() {
  const WristParams p;
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> ua(0.0, kPi / 4), ud(-5.0, 5.0), uy(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < kStates; ++i) {
    const CurvatureState s{ua(rng), 0.0, ud(rng), 0.0};
    const double y = uy(rng);
    const double f = feedback_linearize(y, s.alpha, s.alpha_dot, p);
    worst = worse(worst, std::abs(forward_dynamics(s, f, 0.0, p) - y));
  }
  report(5, worst <= kLinearizationTol, "exact linearization",
         fmt("%d states: max |alpha_ddot - y| %.1e (<=%.0e)", kStates, worst, kLinearizationTol));
}

double max_alpha(const Trajectory& tr) {
  double m = -1e300;
  for (const auto& s : tr.samples) m = worse(m, s.alpha);
  return m;
}

void criterion6() {
  const WristParams p;
  const MpcConfig c;
  const Scenario s = *scenario_preset("ulnar-step");
  const auto t0 = Clock::now();
  const RunResult r = run_closed_loop(s, p, c);
  const double secs = seconds_since(t0);
  const Metrics m = compute_metrics(r.trajectory);
  const double peak = max_alpha(r.trajectory);
  const double bound = kPi / 4 + kAlphaOvershootTol;
  const bool pass = r.status == RunStatus::kCompleted && m.settled &&
                    m.settling_time <= kSettlingBound && m.steady_state_error <= kSteadyStateBound &&
                    peak <= bound && secs < kSimSeconds;
  report(6, pass, "35 deg step tracking",
         fmt("settling %.3f s (<=%.1f s; reported 1.2 s), steady-state error %.1e rad (<=%.0e), "
             "max alpha %.6f rad (<=%.6f), %.2f s for %.0f s at dt %.0e (<%.0f s); RMSE %.4f "
             "rad, informational",
             m.settling_time, kSettlingBound, m.steady_state_error, kSteadyStateBound, peak,
             bound, secs, s.duration, s.dt_sim, kSimSeconds, m.rmse));
}

void criterion7() {
  const WristParams p;
  const MpcConfig c;
  bool pass = true;
  std::string detail;
  for (const char* name : {"flexion-disturbance", "extension-disturbance"}) {
    const Scenario s = *scenario_preset(name);
    const RunResult r = run_closed_loop(s, p, c);
    const Metrics m = compute_metrics(r.trajectory);
    const bool ok = r.status == RunStatus::kCompleted && m.recovered &&
                    *m.recovery_time <= kRecoveryBound;
    const bool slow = !m.recovered || *m.recovery_time > kRecoveryFlag;
    pass = pass && ok;
    detail += fmt("%s%s: %.1f N x %.3f m for %.0f ms at t=%.1f s, peak error %.4f rad, "
                  "recovered at t=%.3f s (<=%.1f s)%s",
                  detail.empty() ? "" : "; ", name, s.disturbance->force,
                  s.disturbance->moment_arm.value_or(p.geom.length),
                  1e3 * s.disturbance->duration, s.disturbance->start_time, m.peak_error,
                  m.recovery_time.value_or(NAN), kRecoveryBound,
                  slow ? " [FLAGGED: slower than 8.6 s]" : "");
  }
  report(7, pass, "disturbance rejection", detail);
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion8() {
  const fs::path base = fs::temp_directory_path() / "softwrist_acceptance";
  fs::remove_all(base);
  const ReproduceResult a = reproduce(base / "a", WristParams{}, MpcConfig{});
  reproduce(base / "b", WristParams{}, MpcConfig{});
  int files = 0, differ = 0;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    ++files;
    const fs::path other = base / "b" / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differ;
  }
  int files_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(base / "b")) ++files_b;
  const bool pass = files > 0 && differ == 0 && files == files_b;
  report(8, pass, "reproduce determinism",
         fmt("%d files per run, %d differ; suite rows %zu, all rows pass: %s", files, differ,
             a.rows.size(), a.all_pass() ? "yes" : "no"));
  fs::remove_all(base);
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                            criterion5, criterion6, criterion7, criterion8};
  int id = 1;
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, false, "exception", e.what());
    }
    ++id;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures;
}
