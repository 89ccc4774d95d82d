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

#include "magloc/bench/commands.h"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "magloc/world/route.h"
#include "magloc/world/sensors.h"

namespace magloc {
namespace bench {

MagneticSurvey BuildMagneticMap(const world::World& world,
                                const world::RouteSet& routes,
                                const magnetic::GridMapOptions& options,
                                const std::uint64_t seed) {
  world::RandomEngine rng(seed);
  std::vector<world::GroundTruthState> states;
  std::vector<Eigen::Vector3d> readings;
  for (const world::Route& route : routes.routes) {
    for (const world::GroundTruthState& state : world::DriveRoute(
             world.plan, route.waypoints, routes.speed, routes.sample_dt)) {
      states.push_back(state);
      readings.push_back(
          world::SampleMagnetometer(world.config, state.pose, &rng));
    }
  }
  magnetic::FingerprintDatabase db = magnetic::BuildDatabase(states, readings);
  magnetic::MagGridMap map = magnetic::BuildGridMap(db, options);
  return {std::move(db), std::move(map)};
}

mapping::OccupancyGrid BuildOccupancyMap(const world::World& world,
                                         const world::RouteSet& routes,
                                         const GridMapConfig& config,
                                         const std::uint64_t seed) {
  if (!(config.resolution > 0.) || config.scan_stride < 1) {
    throw std::invalid_argument("BuildOccupancyMap: invalid configuration");
  }
  world::RandomEngine rng(seed);
  std::vector<mapping::PosedScan> scans;
  for (const world::Route& route : routes.routes) {
    const std::vector<world::GroundTruthState> states = world::DriveRoute(
        world.plan, route.waypoints, routes.speed, routes.sample_dt);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (i % config.scan_stride != 0 && i + 1 != states.size()) continue;
      scans.push_back({states[i].pose, world::RaycastScan(world.plan,
                                                          states[i].pose,
                                                          world.config, &rng)});
    }
  }

  const world::Box& bounds = world.plan.bounds();
  const double res = config.resolution;
  mapping::GridLayout layout;
  layout.resolution = res;
  // Cell centers on the resolution lattice, so walls at lattice coordinates
  // fall on cell centers rather than cell borders.
  layout.origin =
      ((bounds.min.array() - config.margin) / res).floor() * res - 0.5 * res;
  const Eigen::Vector2d extent =
      bounds.max.array() + config.margin + 0.5 * res - layout.origin.array();
  layout.nx = static_cast<int>(std::ceil(extent.x() / res - 1e-9));
  layout.ny = static_cast<int>(std::ceil(extent.y() / res - 1e-9));
  return mapping::BuildGlobalMap(scans, layout, config.insertion);
}

void SaveMagGridMap(const magnetic::MagGridMap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  magnetic::WriteMagGridMap(map, out);
  if (!out) throw std::runtime_error("writing '" + path + "' failed");
}

magnetic::MagGridMap LoadMagGridMap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return magnetic::ReadMagGridMap(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void SaveFingerprints(const magnetic::FingerprintDatabase& db,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  magnetic::WriteFingerprintCsv(db, out);
  if (!out) throw std::runtime_error("writing '" + path + "' failed");
}

std::string GridMapStem(const std::string& path) {
  constexpr char kExtension[] = ".pgm";
  if (path.size() > 4 && path.ends_with(kExtension)) {
    return path.substr(0, path.size() - 4);
  }
  return path;
}

}  // namespace bench
}  // namespace magloc
