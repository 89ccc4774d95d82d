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

#ifndef MAGLOC_WORLD_WORLD_IO_H_
#define MAGLOC_WORLD_WORLD_IO_H_

#include <istream>
#include <string>
#include <vector>

#include "magloc/transform/pose2.h"
#include "magloc/world/floor_plan.h"
#include "magloc/world/world_config.h"

namespace magloc {
namespace world {

struct World {
  FloorPlan plan;
  WorldConfig config;
};

// Plain-text world description, one directive per line, '#' comments:
//
//   origin X Y                 lower-left corner of the bounds
//   size W H                   extent of the bounds
//   segment X1 Y1 X2 Y2        wall
//   block X0 Y0 X1 Y1          solid rectangle (four walls, interior not free)
//   dipole PX PY PZ MX MY MZ   point magnetic source
//   ambient_field BX BY BZ
//   declination | mag_noise_sigma | sensor_height | lidar_max_range |
//   lidar_beam_count | lidar_fov | lidar_range_sigma | seed   VALUE
//
// Parse errors throw std::runtime_error naming 'source' and the line.
World ParseWorld(std::istream& in, const std::string& source = "world");
World LoadWorld(const std::string& path);

struct Route {
  std::string name;
  std::vector<transform::Pose2> waypoints;
};

// Routes file:
//
//   speed V          m/s, applies to every route (default 0.5)
//   sample_dt DT     seconds (default 0.1)
//   route NAME       starts a new route
//   waypoint X Y     appended to the current route
struct RouteSet {
  double speed = 0.5;
  double sample_dt = 0.1;
  std::vector<Route> routes;
};

RouteSet ParseRoutes(std::istream& in, const std::string& source = "routes");
RouteSet LoadRoutes(const std::string& path);

}  // namespace world
}  // namespace magloc

#endif  // MAGLOC_WORLD_WORLD_IO_H_
