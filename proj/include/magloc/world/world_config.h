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

#ifndef MAGLOC_WORLD_WORLD_CONFIG_H_
#define MAGLOC_WORLD_WORLD_CONFIG_H_

#include <cstdint>
#include <numbers>
#include <vector>

#include "Eigen/Core"

namespace magloc {
namespace world {

// Point magnetic source modelling a ferromagnetic object (steel column,
// rebar, elevator car). Position in meters with z the height above the
// floor, moment in A*m^2.
struct DipoleSource {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
};

struct WorldConfig {
  // Global (east-north-up) frame, microtesla.
  Eigen::Vector3d ambient_field{0., 40., -30.};
  // Magnetic declination, radians.
  double declination = 0.;
  std::vector<DipoleSource> dipoles;
  double mag_noise_sigma = 0.5;  // microtesla, per axis
  // Magnetometer height above the floor; makes the fingerprint map 2-D.
  double sensor_height = 0.3;

  // Hokuyo UTM-30LX class defaults.
  double lidar_max_range = 30.;
  int lidar_beam_count = 1081;
  double lidar_fov = 1.5 * std::numbers::pi;
  double lidar_range_sigma = 0.01;

  std::uint64_t seed = 0;

  // Throws std::invalid_argument on a violated invariant.
  void Validate() const;
};

// Noise-free field at 'point': ambient plus the superposed point-dipole
// fields (mu0 / 4pi) (3 (m.r^) r^ - m) / |r|^3, in microtesla. Throws
// std::domain_error when 'point' coincides with a dipole.
Eigen::Vector3d FieldAt(const WorldConfig& config, const Eigen::Vector3d& point);

// Field of a single dipole alone, microtesla.
Eigen::Vector3d DipoleField(const DipoleSource& dipole,
                            const Eigen::Vector3d& point);

}  // namespace world
}  // namespace magloc

#endif  // MAGLOC_WORLD_WORLD_CONFIG_H_
