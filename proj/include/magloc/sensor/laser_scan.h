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

#ifndef MAGLOC_SENSOR_LASER_SCAN_H_
#define MAGLOC_SENSOR_LASER_SCAN_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"

namespace magloc {
namespace sensor {

// One 2-D lidar sweep in the body frame. Beam 'i' has bearing 'angles[i]'
// and range 'ranges[i]'; beams that saw nothing within 'max_range' are
// flagged in 'no_return' and carry 'max_range' as their range.
struct LaserScan {
  std::vector<double> angles;
  std::vector<double> ranges;
  std::vector<std::uint8_t> no_return;
  double max_range = 0.;

  std::size_t size() const { return ranges.size(); }
};

// Throws std::invalid_argument unless angles are strictly increasing and
// every range lies in [0, max_range].
void ValidateLaserScan(const LaserScan& scan);

// Endpoints of all returning beams with the sensor at the origin.
std::vector<Eigen::Vector2d> ScanEndpoints(const LaserScan& scan);

}  // namespace sensor
}  // namespace magloc

#endif  // MAGLOC_SENSOR_LASER_SCAN_H_
