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

#include "magloc/world/world_config.h"

#include <cmath>
#include <stdexcept>

namespace magloc {
namespace world {
namespace {

// mu0 / 4pi in T*m/A, scaled to microtesla.
constexpr double kMu0Over4PiMicrotesla = 1e-7 * 1e6;
constexpr double kSingularityRadius = 1e-9;

}  // namespace

void WorldConfig::Validate() const {
  if (!ambient_field.allFinite() || !(ambient_field.norm() > 0.)) {
    throw std::invalid_argument("WorldConfig: ambient field must be nonzero");
  }
  if (!(mag_noise_sigma >= 0.) || !(lidar_range_sigma >= 0.)) {
    throw std::invalid_argument("WorldConfig: noise sigmas must be >= 0");
  }
  if (lidar_beam_count < 2) {
    throw std::invalid_argument("WorldConfig: lidar_beam_count must be >= 2");
  }
  if (!(lidar_max_range > 0.)) {
    throw std::invalid_argument("WorldConfig: lidar_max_range must be > 0");
  }
  if (!(lidar_fov > 0.) || lidar_fov > 2. * std::numbers::pi) {
    throw std::invalid_argument("WorldConfig: lidar_fov must be in (0, 2pi]");
  }
  if (!std::isfinite(declination) || !std::isfinite(sensor_height)) {
    throw std::invalid_argument("WorldConfig: non-finite scalar");
  }
  for (const DipoleSource& dipole : dipoles) {
    if (!dipole.position.allFinite() || !dipole.moment.allFinite() ||
        !(dipole.moment.norm() > 0.)) {
      throw std::invalid_argument(
          "WorldConfig: dipole needs finite position and nonzero moment");
    }
  }
}

Eigen::Vector3d DipoleField(const DipoleSource& dipole,
                            const Eigen::Vector3d& point) {
  const Eigen::Vector3d r = point - dipole.position;
  const double distance = r.norm();
  if (distance < kSingularityRadius) {
    throw std::domain_error("FieldAt: query point coincides with a dipole");
  }
  const Eigen::Vector3d r_hat = r / distance;
  return kMu0Over4PiMicrotesla *
         (3. * dipole.moment.dot(r_hat) * r_hat - dipole.moment) /
         (distance * distance * distance);
}

Eigen::Vector3d FieldAt(const WorldConfig& config,
                        const Eigen::Vector3d& point) {
  if (!point.allFinite()) {
    throw std::invalid_argument("FieldAt: non-finite query point");
  }
  Eigen::Vector3d field = config.ambient_field;
  for (const DipoleSource& dipole : config.dipoles) {
    field += DipoleField(dipole, point);
  }
  return field;
}

}  // namespace world
}  // namespace magloc
