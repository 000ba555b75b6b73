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

#include "softwrist/kinematics.hpp"

#include <cmath>
#include <string>

#include "softwrist/error.hpp"

namespace softwrist {
namespace {

void check_arc_position(double s, const WristGeometry& geom) {
  if (!(s >= 0.0 && s <= geom.length)) {
    throw Error(ErrorCode::kDomain, "arc position s=" + std::to_string(s) +
                            " outside [0, " + std::to_string(geom.length) +
                            "]");
  }
}

// In-plane radial offset rho(alpha, s) = (l/alpha)(1 - cos(s alpha / l)) and
// its alpha-derivative.
struct Radial {
  double value;
  double d_alpha;
};

Radial radial_offset(double alpha, double s, double l) {
  if (std::abs(alpha) < kStraightThreshold) {
    const double s2 = s * s;
    return {s2 * alpha / (2.0 * l) - s2 * s2 * alpha * alpha * alpha / (24.0 * l * l * l),
            s2 / (2.0 * l) - s2 * s2 * alpha * alpha / (8.0 * l * l * l)};
  }
  const double u = s * alpha / l;
  const double half = std::sin(0.5 * u);
  const double one_minus_cos = 2.0 * half * half;  // no cancellation near 0
  return {l / alpha * one_minus_cos,
          (s * std::sin(u) - l / alpha * one_minus_cos) / alpha};
}

// Axial position z(alpha, s) = (l/alpha) sin(s alpha / l) and its
// alpha-derivative.
Radial axial_position(double alpha, double s, double l) {
  if (std::abs(alpha) < kStraightThreshold) {
    const double s3 = s * s * s;
    return {s - s3 * alpha * alpha / (6.0 * l * l), -s3 * alpha / (3.0 * l * l)};
  }
  const double u = s * alpha / l;
  return {l / alpha * std::sin(u),
          (s * std::cos(u) - l / alpha * std::sin(u)) / alpha};
}

}  // namespace

void validate(const WristGeometry& geom) {
  if (!(geom.length > 0.0)) throw Error(ErrorCode::kInvalidArgument, "length must be > 0");
  if (!(geom.tendon_radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tendon_radius must be > 0");
  }
  if (!(geom.tendon_spacing > 0.0 && geom.tendon_spacing < std::numbers::pi)) {
    throw Error(ErrorCode::kInvalidArgument, "tendon_spacing must be in (0, pi)");
  }
  if (geom.n_discs < 2) throw Error(ErrorCode::kInvalidArgument, "n_discs must be >= 2");
  if (!(geom.disc_spacing > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "disc_spacing must be > 0");
  }
}

Eigen::Matrix3d rotation_matrix(const CurvatureState& state) {
  const double ca = std::cos(state.alpha), sa = std::sin(state.alpha);
  const double cg = std::cos(state.gamma), sg = std::sin(state.gamma);
  Eigen::Matrix3d r;
  // Rot(Z, gamma) * Rot(Y, alpha) * Rot(Z, -gamma), expanded.
  r << cg * cg * ca + sg * sg, cg * sg * ca - cg * sg, cg * sa,
      cg * sg * ca - cg * sg, sg * sg * ca + cg * cg, sg * sa,
      -cg * sa, -sg * sa, ca;
  return r;
}

Eigen::Vector3d backbone_point(const CurvatureState& state, double s,
                               const WristGeometry& geom) {
  check_arc_position(s, geom);
  const Radial rho = radial_offset(state.alpha, s, geom.length);
  const Radial z = axial_position(state.alpha, s, geom.length);
  return {rho.value * std::cos(state.gamma), rho.value * std::sin(state.gamma),
          z.value};
}

Eigen::Matrix4d end_transform(const CurvatureState& state,
                              const WristGeometry& geom) {
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  t.topLeftCorner<3, 3>() = rotation_matrix(state);
  t.topRightCorner<3, 1>() = backbone_point(state, geom.length, geom);
  return t;
}

Eigen::Vector3d backbone_velocity(const CurvatureState& state, double s,
                                  const WristGeometry& geom) {
  check_arc_position(s, geom);
  const Radial rho = radial_offset(state.alpha, s, geom.length);
  const Radial z = axial_position(state.alpha, s, geom.length);
  const double cg = std::cos(state.gamma), sg = std::sin(state.gamma);
  return {rho.d_alpha * cg * state.alpha_dot - rho.value * sg * state.gamma_dot,
          rho.d_alpha * sg * state.alpha_dot + rho.value * cg * state.gamma_dot,
          z.d_alpha * state.alpha_dot};
}

std::array<double, 3> tendon_lengths(const CurvatureState& state,
                                     const WristGeometry& geom) {
  const double ra = geom.tendon_radius * state.alpha;
  const double g = state.gamma, th = geom.tendon_spacing;
  return {ra * std::cos(g), ra * std::cos(-g + th), ra * std::cos(g + th)};
}

std::array<double, 3> tendon_velocities(const CurvatureState& state,
                                        const WristGeometry& geom) {
  const double r = geom.tendon_radius;
  const double g = state.gamma, th = geom.tendon_spacing;
  const double ad = state.alpha_dot, gd = state.gamma_dot;
  const double ra = r * state.alpha;
  return {r * std::cos(g) * ad - ra * std::sin(g) * gd,
          r * std::cos(-g + th) * ad + ra * std::sin(-g + th) * gd,
          r * std::cos(g + th) * ad - ra * std::sin(g + th) * gd};
}

}  // namespace softwrist
