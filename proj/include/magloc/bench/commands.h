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

#ifndef MAGLOC_BENCH_COMMANDS_H_
#define MAGLOC_BENCH_COMMANDS_H_

#include <cstdint>
#include <string>

#include "magloc/magnetic/fingerprint_database.h"
#include "magloc/magnetic/mag_grid_map.h"
#include "magloc/mapping/occupancy_grid.h"
#include "magloc/mapping/submap.h"
#include "magloc/world/world_io.h"

namespace magloc {
namespace bench {

struct MagneticSurvey {
  magnetic::FingerprintDatabase fingerprints;
  magnetic::MagGridMap map;
};

// Drives every route, records one magnetometer reading per sample and
// builds the interpolated field map. Throws world::RouteError for routes
// leaving free space.
MagneticSurvey BuildMagneticMap(const world::World& world,
                                const world::RouteSet& routes,
                                const magnetic::GridMapOptions& options,
                                std::uint64_t seed);

struct GridMapConfig {
  double resolution = 0.05;
  double margin = 0.5;  // around the plan bounds, meters
  int scan_stride = 5;  // insert every n-th route sample
  mapping::InsertionOptions insertion;
};

// Inserts lidar scans taken at ground-truth route poses into one global
// occupancy grid covering the plan bounds plus the margin.
mapping::OccupancyGrid BuildOccupancyMap(const world::World& world,
                                         const world::RouteSet& routes,
                                         const GridMapConfig& config,
                                         std::uint64_t seed);

// File helpers; all throw std::runtime_error naming the file on failure.
void SaveMagGridMap(const magnetic::MagGridMap& map, const std::string& path);
magnetic::MagGridMap LoadMagGridMap(const std::string& path);
void SaveFingerprints(const magnetic::FingerprintDatabase& db,
                      const std::string& path);

// Accepts either a stem or a path ending in '.pgm'.
std::string GridMapStem(const std::string& path);

}  // namespace bench
}  // namespace magloc

#endif  // MAGLOC_BENCH_COMMANDS_H_
