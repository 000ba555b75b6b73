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

// Lumped energy model of the wrist and its planar (gamma = 0) equation of
// motion
//
//   M(alpha) alpha_ddot + C(alpha) alpha_dot^2 + K alpha = D F + tau_ext.
//
// Kinetic energy factors K1, K2, K6, K7 are least-squares polynomial fits in
// alpha; K1 also has a closed form used to check the fit. K6 and K7 are only
// valid for five discs at 15 mm spacing.

#ifndef SOFTWRIST_DYNAMICS_HPP_
#define SOFTWRIST_DYNAMICS_HPP_

#include <string>
#include <vector>

#include "softwrist/kinematics.hpp"

namespace softwrist {

struct WristParams {
  WristGeometry geom;
  double m1 = 0.005;    // primary backbone mass, kg
  double m2 = 0.005;    // secondary backbone mass, kg
  double m3 = 0.1;      // per-disc mass, kg
  double flexural_rigidity = 2e-2;  // EI, N m^2
  // Informational only once m1 is given.
  double density = 7850.0;           // kg/m^3
  double cross_section_area = 8.5e-6;  // m^2
};

// Throws Error(kInvalidArgument) on a broken invariant.
void validate(const WristParams& params);

// Non-fatal configuration issues (e.g. disc layout differing from the one the
// K6/K7 fits were made for).
std::vector<std::string> params_warnings(const WristParams& params);

enum class FitStatus { kOk, kOutOfRange };

// Fits are made on [0, pi/4]; beyond pi/2 they are flagged.
FitStatus fit_status(double alpha);

double k1_exact(double alpha);
double k1_fit(double alpha);
double k1_fit_derivative(double alpha);
double k2_fit(double alpha);
double k6_fit(double alpha);
double k6_fit_derivative(double alpha);
double k7_fit(double alpha);

struct SecondaryFactors {
  double k3;  // m^2
  double k4;  // m^2
  double k5;  // m^2
};

SecondaryFactors k345(const CurvatureState& state, const WristGeometry& geom);

struct KineticEnergies {
  double primary;           // Ek1
  double secondary;         // Ek2 = driven + Ek1-form term with m2
  double secondary_driven;  // (1/2) m2 [a'^2 K3 + a' g' K4 + g'^2 K5]
  double discs;             // Ek3
  double total() const { return primary + secondary + discs; }
};

KineticEnergies kinetic_energies(const CurvatureState& state,
                                 const WristParams& params);

double elastic_energy(double alpha, const WristParams& params);

struct PlanarCoefficients {
  double inertia;    // M, kg m^2
  double coriolis;   // C, kg m^2
  double stiffness;  // K, N m / rad
  double actuation;  // D, m
};

// Throws Error(kUnphysical) if M <= 0.
PlanarCoefficients planar_coefficients(double alpha, const WristParams& params);

// Planar state only (gamma = gamma_dot = 0).
double forward_dynamics(const CurvatureState& state, double force,
                        double tau_ext, const WristParams& params);

// One classical RK4 step of (alpha, alpha_dot) with force and tau_ext held.
// Throws Error(kNonFinite) if the result is not finite.
CurvatureState integrate_step(const CurvatureState& state, double force,
                              double tau_ext, double dt,
                              const WristParams& params);

// (1/2) M(alpha) alpha_dot^2 + elastic_energy(alpha).
double mechanical_energy(const CurvatureState& state, const WristParams& params);

}  // namespace softwrist

#endif  // SOFTWRIST_DYNAMICS_HPP_
