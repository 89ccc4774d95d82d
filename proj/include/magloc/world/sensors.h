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

#ifndef MAGLOC_WORLD_SENSORS_H_
#define MAGLOC_WORLD_SENSORS_H_

#include <random>

#include "Eigen/Core"
#include "magloc/sensor/laser_scan.h"
#include "magloc/transform/pose2.h"
#include "magloc/world/floor_plan.h"
#include "magloc/world/world_config.h"

namespace magloc {
namespace world {

// All simulated sensors draw from this engine; a trial owns its instance.
using RandomEngine = std::mt19937_64;

// Body-frame magnetometer reading B_L = R(-heading) B_G + noise, with B_G
// evaluated at sensor height above the pose. Always consumes three normal
// draws, so streams stay aligned whether or not noise is enabled.
Eigen::Vector3d SampleMagnetometer(const WorldConfig& config,
                                   const transform::Pose2& pose,
                                   RandomEngine* rng);

// Beams are evenly spaced over the field of view, centered on the heading.
// Range noise is added before clamping to [0, max_range]; beams at max range
// are flagged as no-return.
sensor::LaserScan RaycastScan(const FloorPlan& plan,
                              const transform::Pose2& pose,
                              const WorldConfig& config, RandomEngine* rng);

}  // namespace world
}  // namespace magloc

#endif  // MAGLOC_WORLD_SENSORS_H_
