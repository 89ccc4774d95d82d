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

#include "magloc/sensor/laser_scan.h"

#include <cmath>
#include <stdexcept>

namespace magloc {
namespace sensor {

void ValidateLaserScan(const LaserScan& scan) {
  if (scan.angles.size() != scan.ranges.size() ||
      scan.no_return.size() != scan.ranges.size()) {
    throw std::invalid_argument("LaserScan: per-beam arrays differ in length");
  }
  if (!(scan.max_range > 0.)) {
    throw std::invalid_argument("LaserScan: max_range must be positive");
  }
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (i > 0 && !(scan.angles[i] > scan.angles[i - 1])) {
      throw std::invalid_argument("LaserScan: angles not strictly increasing");
    }
    if (!(scan.ranges[i] >= 0. && scan.ranges[i] <= scan.max_range)) {
      throw std::invalid_argument("LaserScan: range outside [0, max_range]");
    }
  }
}

std::vector<Eigen::Vector2d> ScanEndpoints(const LaserScan& scan) {
  std::vector<Eigen::Vector2d> endpoints;
  endpoints.reserve(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (scan.no_return[i]) continue;
    endpoints.emplace_back(scan.ranges[i] * std::cos(scan.angles[i]),
                           scan.ranges[i] * std::sin(scan.angles[i]));
  }
  return endpoints;
}

}  // namespace sensor
}  // namespace magloc
