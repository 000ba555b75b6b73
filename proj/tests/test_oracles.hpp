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

// Independent reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls into the code it is used to check
// except where a trajectory has to be produced by the integrator itself.

#ifndef SOFTWRIST_TESTS_TEST_ORACLES_HPP_
#define SOFTWRIST_TESTS_TEST_ORACLES_HPP_

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "softwrist/dynamics.hpp"
#include "softwrist/mpc_controller.hpp"

namespace softwrist::oracle {

// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

// K1 from the kinetic-energy integral of a planar circular arc, written out
// from scratch: K1 = 3 * int_0^1 |dP/dalpha|^2 ds for a unit-length arc.
// Requires alpha != 0.
double k1_quadrature(double alpha);

// err(2 ms) / err(1 ms) for a 1 s free swing from alpha = 0.3, against a
// 1/16 ms reference run.
double richardson_ratio(const WristParams& params);

// max |E(t) - E(0)| / E(0) over 5 s of free motion released at rest from
// alpha = amplitude, dt = 1 ms.
double energy_drift(const WristParams& params, double amplitude);

// Same run, measured on the exact first integral of the planar model rather
// than on (1/2) M alpha_dot^2 + E_p; isolates integrator drift.
double first_integral_drift(const WristParams& params, double amplitude);

// Angular frequency of free motion released from rest at alpha = amplitude,
// from the spacing of zero crossings.
double oscillation_frequency(const WristParams& params, double amplitude);

// Taylor series of exp(m) (converges for the small, nilpotent blocks used).
Eigen::MatrixXd expm_series(const Eigen::MatrixXd& m);

// Unconstrained batch tracker for the double integrator with nu = p and no
// increment weight: stacked prediction matrices and the normal equations.
// Returns the first commanded acceleration y0 = prev_u + du0.
double unconstrained_first_move(const MpcConfig& config, const Eigen::Vector2d& x_now,
                                std::span<const Reference> ref, double prev_u);

}  // namespace softwrist::oracle

#endif  // SOFTWRIST_TESTS_TEST_ORACLES_HPP_
