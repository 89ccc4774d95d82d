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

#include "magloc/mapping/submap.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace magloc {
namespace mapping {
namespace {

double Logit(double p) { return std::log(p / (1. - p)); }

double Logistic(double odds) { return 1. / (1. + std::exp(-odds)); }

enum CellUpdate : std::uint8_t { kNone = 0, kHit = 1, kMiss = 2 };

}  // namespace

std::vector<Eigen::Array2i> RayCells(const OccupancyGrid& grid,
                                     const Eigen::Vector2d& from,
                                     const Eigen::Vector2d& to) {
  const Eigen::Vector2d start =
      (from - grid.origin()) / grid.resolution();
  const Eigen::Vector2d end = (to - grid.origin()) / grid.resolution();
  Eigen::Array2i cell(static_cast<int>(std::floor(start.x())),
                      static_cast<int>(std::floor(start.y())));
  const Eigen::Array2i last(static_cast<int>(std::floor(end.x())),
                            static_cast<int>(std::floor(end.y())));
  const Eigen::Vector2d delta = end - start;

  constexpr double kInfinity = std::numeric_limits<double>::infinity();
  const int step_x = delta.x() > 0. ? 1 : -1;
  const int step_y = delta.y() > 0. ? 1 : -1;
  const double t_delta_x = delta.x() != 0. ? 1. / std::abs(delta.x()) : kInfinity;
  const double t_delta_y = delta.y() != 0. ? 1. / std::abs(delta.y()) : kInfinity;
  double t_max_x = kInfinity;
  if (delta.x() > 0.) {
    t_max_x = (cell.x() + 1. - start.x()) * t_delta_x;
  } else if (delta.x() < 0.) {
    t_max_x = (start.x() - cell.x()) * t_delta_x;
  }
  double t_max_y = kInfinity;
  if (delta.y() > 0.) {
    t_max_y = (cell.y() + 1. - start.y()) * t_delta_y;
  } else if (delta.y() < 0.) {
    t_max_y = (start.y() - cell.y()) * t_delta_y;
  }

  // Each step moves along exactly one axis, so the walk takes the Manhattan
  // distance between the two cells.
  const int steps = std::abs(last.x() - cell.x()) + std::abs(last.y() - cell.y());
  std::vector<Eigen::Array2i> cells;
  cells.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    cells.push_back(cell);
    const bool x_done = cell.x() == last.x();
    const bool y_done = cell.y() == last.y();
    if (y_done || (!x_done && t_max_x < t_max_y)) {
      cell.x() += step_x;
      t_max_x += t_delta_x;
    } else {
      cell.y() += step_y;
      t_max_y += t_delta_y;
    }
  }
  return cells;
}

void InsertScan(const sensor::LaserScan& scan, const transform::Pose2& pose,
                const InsertionOptions& options, Submap* const submap) {
  OccupancyGrid& grid = submap->grid;
  const Eigen::Vector2d sensor_origin = pose.translation();
  std::vector<Eigen::Vector2d> endpoints = sensor::ScanEndpoints(scan);
  grid.GrowToInclude(sensor_origin);
  for (Eigen::Vector2d& endpoint : endpoints) {
    endpoint = transform::TransformPoint(pose, endpoint);
    grid.GrowToInclude(endpoint);
  }

  std::vector<std::uint8_t> updates(
      static_cast<std::size_t>(grid.nx()) * grid.ny(), kNone);
  std::vector<Eigen::Array2i> touched;
  const auto index = [&](const Eigen::Array2i& cell) {
    return static_cast<std::size_t>(cell.y()) * grid.nx() + cell.x();
  };
  for (const Eigen::Vector2d& endpoint : endpoints) {
    const Eigen::Array2i cell = grid.CellIndex(endpoint);
    std::uint8_t& update = updates[index(cell)];
    if (update == kNone) touched.push_back(cell);
    update = kHit;
  }
  for (const Eigen::Vector2d& endpoint : endpoints) {
    for (const Eigen::Array2i& cell : RayCells(grid, sensor_origin, endpoint)) {
      if (!grid.Contains(cell)) continue;
      std::uint8_t& update = updates[index(cell)];
      if (update != kNone) continue;
      update = kMiss;
      touched.push_back(cell);
    }
  }

  const double hit_odds = Logit(options.hit_probability);
  const double miss_odds = Logit(options.miss_probability);
  for (const Eigen::Array2i& cell : touched) {
    const double odds = Logit(grid.probability(cell)) +
                        (updates[index(cell)] == kHit ? hit_odds : miss_odds);
    grid.SetProbability(cell, std::clamp(Logistic(odds),
                                         options.min_probability,
                                         options.max_probability));
  }
  ++submap->scan_count;
}

OccupancyGrid BuildGlobalMap(std::span<const PosedScan> scans,
                             const GridLayout& layout,
                             const InsertionOptions& options) {
  if (scans.empty()) {
    throw std::invalid_argument("BuildGlobalMap: no scans");
  }
  Submap submap{OccupancyGrid(layout.origin, layout.resolution, layout.nx,
                              layout.ny),
                transform::Pose2(), 0};
  for (const PosedScan& posed : scans) {
    InsertScan(posed.scan, posed.pose, options, &submap);
  }
  return std::move(submap.grid);
}

}  // namespace mapping
}  // namespace magloc
