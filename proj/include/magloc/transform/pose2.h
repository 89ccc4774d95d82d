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

#ifndef MAGLOC_TRANSFORM_POSE2_H_
#define MAGLOC_TRANSFORM_POSE2_H_

#include <string>

#include "Eigen/Core"

namespace magloc {
namespace transform {

// Wraps 'angle' into (-pi, pi].
double NormalizeAngle(double angle);

// Planar pose (x, y, heading). Used for ground truth, scan poses and
// estimates alike. The heading is kept normalized to (-pi, pi].
struct Pose2 {
  double x = 0.;
  double y = 0.;
  double heading = 0.;

  Pose2() = default;
  Pose2(double x, double y, double heading)
      : x(x), y(y), heading(NormalizeAngle(heading)) {}
  Pose2(const Eigen::Vector2d& translation, double heading)
      : Pose2(translation.x(), translation.y(), heading) {}

  Eigen::Vector2d translation() const { return {x, y}; }
  bool IsFinite() const;
  std::string DebugString() const;
};

// R(heading) * point + translation.
Eigen::Vector2d TransformPoint(const Pose2& pose, const Eigen::Vector2d& point);

// Rotates the planar components of 'v' by 'angle' about +z.
Eigen::Vector3d RotateAboutZ(double angle, const Eigen::Vector3d& v);

// Returns a * b, i.e. 'b' expressed in the frame that 'a' maps from.
Pose2 Compose(const Pose2& a, const Pose2& b);
Pose2 Inverse(const Pose2& pose);

struct PoseError {
  double translation = 0.;  // meters
  double heading = 0.;      // smallest signed difference, radians
};

PoseError ComputePoseError(const Pose2& estimate, const Pose2& truth);

}  // namespace transform
}  // namespace magloc

#endif  // MAGLOC_TRANSFORM_POSE2_H_
