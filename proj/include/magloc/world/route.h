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

#ifndef MAGLOC_WORLD_ROUTE_H_
#define MAGLOC_WORLD_ROUTE_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "magloc/transform/pose2.h"
#include "magloc/world/floor_plan.h"

namespace magloc {
namespace world {

struct GroundTruthState {
  transform::Pose2 pose;
  double time = 0.;  // seconds since the route started
};

// Raised when a route leaves free space; 'index' is the offending waypoint.
class RouteError : public std::invalid_argument {
 public:
  RouteError(std::size_t index, const std::string& what)
      : std::invalid_argument(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Heading of a straight move, snapped to the nearest wall-parallel
// direction {0, pi/2, pi, -pi/2}.
double SnapToWallParallel(double heading);

// Drives the piecewise-linear route through 'waypoints' at constant 'speed',
// sampling every 'sample_dt' seconds plus the final waypoint. Headings follow
// the current leg, snapped to wall-parallel directions. A single waypoint
// yields one state at t = 0 with that waypoint's heading.
std::vector<GroundTruthState> DriveRoute(
    const FloorPlan& plan, std::span<const transform::Pose2> waypoints,
    double speed, double sample_dt);

}  // namespace world
}  // namespace magloc

#endif  // MAGLOC_WORLD_ROUTE_H_
