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

#ifndef MAGLOC_MAPPING_SUBMAP_H_
#define MAGLOC_MAPPING_SUBMAP_H_

#include <span>
#include <vector>

#include "Eigen/Core"
#include "magloc/mapping/occupancy_grid.h"
#include "magloc/sensor/laser_scan.h"
#include "magloc/transform/pose2.h"

namespace magloc {
namespace mapping {

struct InsertionOptions {
  double hit_probability = 0.6;
  double miss_probability = 0.4;
  double min_probability = 0.02;
  double max_probability = 0.98;
};

struct Submap {
  OccupancyGrid grid;
  transform::Pose2 pose;  // submap frame in the global frame
  int scan_count = 0;
};

// Cells crossed by the segment 'from' -> 'to', in traversal order, starting
// with the cell containing 'from' and excluding the cell containing 'to'.
// Cells may lie outside the grid.
std::vector<Eigen::Array2i> RayCells(const OccupancyGrid& grid,
                                     const Eigen::Vector2d& from,
                                     const Eigen::Vector2d& to);

// Inserts 'scan' taken at 'pose' (submap frame). Each endpoint cell gets one
// hit update; every other cell on a ray gets one miss update per scan.
// Updates are applied in log-odds and clamped to [min, max] probability.
// The grid grows when an endpoint falls outside it.
void InsertScan(const sensor::LaserScan& scan, const transform::Pose2& pose,
                const InsertionOptions& options, Submap* submap);

struct PosedScan {
  transform::Pose2 pose;
  sensor::LaserScan scan;
};

struct GridLayout {
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  double resolution = 0.05;
  int nx = 1;
  int ny = 1;
};

// Accumulates all scans, at their ground-truth poses, into one global
// grid starting from 'layout'. Throws std::invalid_argument if 'scans' is
// empty.
OccupancyGrid BuildGlobalMap(std::span<const PosedScan> scans,
                             const GridLayout& layout,
                             const InsertionOptions& options);

}  // namespace mapping
}  // namespace magloc

#endif  // MAGLOC_MAPPING_SUBMAP_H_
