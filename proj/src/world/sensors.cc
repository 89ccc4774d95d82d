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

#include "magloc/world/sensors.h"

#include <algorithm>
#include <cmath>

namespace magloc {
namespace world {

Eigen::Vector3d SampleMagnetometer(const WorldConfig& config,
                                   const transform::Pose2& pose,
                                   RandomEngine* const rng) {
  const Eigen::Vector3d global_field =
      FieldAt(config, Eigen::Vector3d(pose.x, pose.y, config.sensor_height));
  Eigen::Vector3d reading = transform::RotateAboutZ(-pose.heading, global_field);
  std::normal_distribution<double> normal(0., 1.);
  for (int i = 0; i < 3; ++i) {
    reading[i] += config.mag_noise_sigma * normal(*rng);
  }
  return reading;
}

sensor::LaserScan RaycastScan(const FloorPlan& plan,
                              const transform::Pose2& pose,
                              const WorldConfig& config,
                              RandomEngine* const rng) {
  const int beam_count = config.lidar_beam_count;
  const double max_range = config.lidar_max_range;
  const double increment = config.lidar_fov / (beam_count - 1);
  std::normal_distribution<double> normal(0., 1.);

  sensor::LaserScan scan;
  scan.max_range = max_range;
  scan.angles.resize(beam_count);
  scan.ranges.resize(beam_count);
  scan.no_return.resize(beam_count);
  for (int i = 0; i < beam_count; ++i) {
    const double angle = -0.5 * config.lidar_fov + i * increment;
    const double bearing = pose.heading + angle;
    const std::optional<double> hit = plan.Raycast(
        pose.translation(),
        Eigen::Vector2d(std::cos(bearing), std::sin(bearing)));
    double range = hit ? std::min(*hit, max_range) : max_range;
    range += config.lidar_range_sigma * normal(*rng);
    range = std::clamp(range, 0., max_range);
    scan.angles[i] = angle;
    scan.ranges[i] = range;
    scan.no_return[i] = !hit || range >= max_range;
    if (scan.no_return[i]) scan.ranges[i] = max_range;
  }
  return scan;
}

}  // namespace world
}  // namespace magloc
