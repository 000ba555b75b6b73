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

#include "softwrist/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "softwrist/error.hpp"

namespace softwrist {
namespace {

// Below this angle the closed form of K1 cancels badly; the Taylor series
// through alpha^10 is accurate to ~1e-16 there.
constexpr double kK1SeriesThreshold = 0.5;

bool is_planar(const CurvatureState& s) {
  return s.gamma == 0.0 && s.gamma_dot == 0.0;
}

}  // namespace

void validate(const WristParams& params) {
  validate(params.geom);
  if (!(params.m1 > 0.0) || !(params.m2 > 0.0) || !(params.m3 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "masses must be > 0");
  }
  if (!(params.flexural_rigidity > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "flexural_rigidity must be > 0");
  }
}

std::vector<std::string> params_warnings(const WristParams& params) {
  std::vector<std::string> out;
  if (params.geom.n_discs != 5 ||
      std::abs(params.geom.disc_spacing - 0.015) > 1e-12) {
    std::ostringstream msg;
    msg << "K6/K7 fits assume 5 discs at 15 mm spacing; got "
        << params.geom.n_discs << " discs at " << params.geom.disc_spacing * 1e3
        << " mm";
    out.push_back(msg.str());
  }
  return out;
}

FitStatus fit_status(double alpha) {
  return std::abs(alpha) > std::numbers::pi / 2 ? FitStatus::kOutOfRange
                                                : FitStatus::kOk;
}

double k1_exact(double alpha) {
  if (std::abs(alpha) < kK1SeriesThreshold) {
    const double a2 = alpha * alpha;
    return 3.0 / 20.0 +
           a2 * (-1.0 / 168.0 +
                 a2 * (1.0 / 8640.0 +
                       a2 * (-1.0 / 739200.0 +
                             a2 * (1.0 / 94348800.0 - a2 / 16765056000.0))));
  }
  const double a = alpha;
  return (a * a * a + 6.0 * a - 12.0 * std::sin(a) + 6.0 * a * std::cos(a)) /
         std::pow(a, 5);
}

double k1_fit(double alpha) {
  return -0.00426 * alpha * alpha - 0.00277 * alpha + 0.15085;
}

double k1_fit_derivative(double alpha) { return -0.00852 * alpha - 0.00277; }

double k2_fit(double alpha) {
  const double a = alpha;
  return -0.05567 * a * a * a + 0.2328 * a * a + 0.006216 * a - 0.00406;
}

double k6_fit(double alpha) {
  return (-0.00043 * alpha * alpha - 0.00031 * alpha + 0.01435) / 2.0;
}

double k6_fit_derivative(double alpha) {
  return (-0.00086 * alpha - 0.00031) / 2.0;
}

double k7_fit(double alpha) {
  const double a = alpha;
  return (-0.00394 * a * a * a + 0.01575 * a * a + 0.00131 * a - 0.00047) / 2.0;
}

SecondaryFactors k345(const CurvatureState& state, const WristGeometry& geom) {
  const double r2 = geom.tendon_radius * geom.tendon_radius;
  const double g = state.gamma, th = geom.tendon_spacing, a = state.alpha;
  const double c1 = std::cos(g), c2 = std::cos(-g + th), c3 = std::cos(g + th);
  const double s1 = std::sin(g), s2 = std::sin(-g + th), s3 = std::sin(g + th);
  return {
      r2 * (c1 * c1 + c2 * c2 + c3 * c3),
      r2 * a *
          (-std::sin(2.0 * g) + std::sin(2.0 * (-g + th)) -
           std::sin(2.0 * (g + th))),
      r2 * a * a * (s1 * s1 + s2 * s2 + s3 * s3),
  };
}

KineticEnergies kinetic_energies(const CurvatureState& state,
                                 const WristParams& params) {
  const double l2 = params.geom.length * params.geom.length;
  const double ad = state.alpha_dot, gd = state.gamma_dot;
  const double k1 = k1_fit(state.alpha), k2 = k2_fit(state.alpha);
  const SecondaryFactors f = k345(state, params.geom);

  KineticEnergies e{};
  e.primary = params.m1 * l2 * (ad * ad * k1 / 6.0 + gd * gd * k2 / 8.0);
  e.secondary_driven =
      0.5 * params.m2 * (ad * ad * f.k3 + ad * gd * f.k4 + gd * gd * f.k5);
  e.secondary = e.secondary_driven +
                params.m2 * l2 * (ad * ad * k1 / 6.0 + gd * gd * k2 / 8.0);
  e.discs = 0.5 * params.m3 *
            (ad * ad * k6_fit(state.alpha) + gd * gd * k7_fit(state.alpha));
  return e;
}

double elastic_energy(double alpha, const WristParams& params) {
  return 2.0 * params.flexural_rigidity / params.geom.length * alpha * alpha;
}

PlanarCoefficients planar_coefficients(double alpha, const WristParams& params) {
  const double l2 = params.geom.length * params.geom.length;
  const double m2 = params.m2, m3 = params.m3;
  // K3 at gamma = 0 does not depend on alpha.
  const double k3 = k345({alpha, 0.0, 0.0, 0.0}, params.geom).k3;

  PlanarCoefficients c{};
  c.inertia = (4.0 * m2 * l2 * k1_fit(alpha) + 3.0 * m2 * k3 +
               3.0 * m3 * k6_fit(alpha)) /
              3.0;
  c.coriolis = -(4.0 * m2 * l2 * k1_fit_derivative(alpha) +
                 3.0 * m3 * k6_fit_derivative(alpha)) /
               6.0;
  c.stiffness = 4.0 * params.flexural_rigidity / params.geom.length;
  c.actuation = params.geom.tendon_radius;
  if (!(c.inertia > 0.0)) {
    std::ostringstream msg;
    msg << "non-positive inertia M=" << c.inertia << " at alpha=" << alpha;
    throw Error(ErrorCode::kUnphysical, msg.str());
  }
  return c;
}

double forward_dynamics(const CurvatureState& state, double force,
                        double tau_ext, const WristParams& params) {
  if (!is_planar(state)) {
    throw Error(ErrorCode::kInvalidArgument,
                "forward_dynamics requires a planar state (gamma = 0)");
  }
  const PlanarCoefficients c = planar_coefficients(state.alpha, params);
  const double ad = state.alpha_dot;
  return (c.actuation * force + tau_ext - c.coriolis * ad * ad -
          c.stiffness * state.alpha) /
         c.inertia;
}

CurvatureState integrate_step(const CurvatureState& state, double force,
                              double tau_ext, double dt,
                              const WristParams& params) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be > 0");

  auto deriv = [&](double a, double ad) {
    if (!std::isfinite(a) || !std::isfinite(ad)) {
      throw Error(ErrorCode::kNonFinite, "integration stage produced a non-finite state");
    }
    return forward_dynamics({a, 0.0, ad, 0.0}, force, tau_ext, params);
  };
  const double a0 = state.alpha, v0 = state.alpha_dot;
  const double ka1 = v0, kv1 = deriv(a0, v0);
  const double ka2 = v0 + 0.5 * dt * kv1;
  const double kv2 = deriv(a0 + 0.5 * dt * ka1, ka2);
  const double ka3 = v0 + 0.5 * dt * kv2;
  const double kv3 = deriv(a0 + 0.5 * dt * ka2, ka3);
  const double ka4 = v0 + dt * kv3;
  const double kv4 = deriv(a0 + dt * ka3, ka4);

  CurvatureState next = state;
  next.alpha = a0 + dt / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
  next.alpha_dot = v0 + dt / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
  if (!std::isfinite(next.alpha) || !std::isfinite(next.alpha_dot)) {
    throw Error(ErrorCode::kNonFinite, "integration step produced a non-finite state");
  }
  return next;
}

double mechanical_energy(const CurvatureState& state, const WristParams& params) {
  const PlanarCoefficients c = planar_coefficients(state.alpha, params);
  return 0.5 * c.inertia * state.alpha_dot * state.alpha_dot +
         elastic_energy(state.alpha, params);
}

}  // namespace softwrist
