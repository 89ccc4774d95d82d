/*
 * Copyright 2026 The Magloc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "magloc/transform/pose2.h"

#include <cmath>
#include <numbers>
#include <sstream>

namespace magloc {
namespace transform {

double NormalizeAngle(double angle) {
  constexpr double kTwoPi = 2. * std::numbers::pi;
  double wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

bool Pose2::IsFinite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(heading);
}

std::string Pose2::DebugString() const {
  std::ostringstream out;
  out << "{x: " << x << ", y: " << y << ", heading: " << heading << "}";
  return out.str();
}

Eigen::Vector2d TransformPoint(const Pose2& pose,
                               const Eigen::Vector2d& point) {
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  return {c * point.x() - s * point.y() + pose.x,
          s * point.x() + c * point.y() + pose.y};
}

Eigen::Vector3d RotateAboutZ(const double angle, const Eigen::Vector3d& v) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.z()};
}

Pose2 Compose(const Pose2& a, const Pose2& b) {
  return Pose2(TransformPoint(a, b.translation()), a.heading + b.heading);
}

Pose2 Inverse(const Pose2& pose) {
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  return Pose2(-c * pose.x - s * pose.y, s * pose.x - c * pose.y,
               -pose.heading);
}

PoseError ComputePoseError(const Pose2& estimate, const Pose2& truth) {
  return {(estimate.translation() - truth.translation()).norm(),
          NormalizeAngle(estimate.heading - truth.heading)};
}

}  // namespace transform
}  // namespace magloc
