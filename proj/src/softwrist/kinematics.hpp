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

// Constant-curvature geometry of the wrist arc.
//
// The arc is parameterised by the bending angle alpha and the bending-plane
// angle gamma. Positions are measured from the base disc; s is the undeformed
// arc-length coordinate along an inextensible backbone.

#ifndef SOFTWRIST_KINEMATICS_HPP_
#define SOFTWRIST_KINEMATICS_HPP_

#include <array>
#include <numbers>

#include <Eigen/Dense>

namespace softwrist {

struct CurvatureState {
  double alpha = 0.0;      // rad
  double gamma = 0.0;      // rad
  double alpha_dot = 0.0;  // rad/s
  double gamma_dot = 0.0;  // rad/s
};

struct WristGeometry {
  double length = 0.075;                              // l, m
  double tendon_radius = 0.010;                       // r, m
  double tendon_spacing = 2.0 * std::numbers::pi / 3;  // theta, rad
  int n_discs = 5;
  double disc_spacing = 0.015;                        // h, m
};

// Throws Error(kInvalidArgument) when an invariant of the geometry is broken.
void validate(const WristGeometry& geom);

// Below this bending angle the 1/alpha terms are replaced by their series.
inline constexpr double kStraightThreshold = 1e-4;

Eigen::Matrix3d rotation_matrix(const CurvatureState& state);

// Throws Error(kDomain) if s is outside [0, l].
Eigen::Vector3d backbone_point(const CurvatureState& state, double s,
                               const WristGeometry& geom);

Eigen::Matrix4d end_transform(const CurvatureState& state,
                              const WristGeometry& geom);

// Time derivative of backbone_point along (alpha_dot, gamma_dot).
// Throws Error(kDomain) if s is outside [0, l].
Eigen::Vector3d backbone_velocity(const CurvatureState& state, double s,
                                  const WristGeometry& geom);

// Tendon length changes relative to the straight configuration, m.
std::array<double, 3> tendon_lengths(const CurvatureState& state,
                                     const WristGeometry& geom);

std::array<double, 3> tendon_velocities(const CurvatureState& state,
                                        const WristGeometry& geom);

}  // namespace softwrist

#endif  // SOFTWRIST_KINEMATICS_HPP_
