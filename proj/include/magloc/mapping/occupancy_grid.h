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

#ifndef MAGLOC_MAPPING_OCCUPANCY_GRID_H_
#define MAGLOC_MAPPING_OCCUPANCY_GRID_H_

#include <vector>

#include "Eigen/Core"

namespace magloc {
namespace mapping {

constexpr double kUnknownProbability = 0.5;

// Occupancy probability per cell. Cell (ix, iy) covers
// [origin + res * (ix, iy), origin + res * (ix + 1, iy + 1)).
class OccupancyGrid {
 public:
  OccupancyGrid(const Eigen::Vector2d& origin, double resolution, int nx,
                int ny);

  const Eigen::Vector2d& origin() const { return origin_; }
  double resolution() const { return resolution_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  bool Contains(const Eigen::Array2i& cell) const {
    return cell.x() >= 0 && cell.y() >= 0 && cell.x() < nx_ && cell.y() < ny_;
  }
  Eigen::Array2i CellIndex(const Eigen::Vector2d& point) const;
  Eigen::Vector2d CellCenter(const Eigen::Array2i& cell) const;

  // Unknown (0.5) outside the grid.
  double probability(const Eigen::Array2i& cell) const {
    return Contains(cell) ? cells_[Index(cell)] : kUnknownProbability;
  }
  // Throws std::invalid_argument outside the grid or outside [0, 1].
  void SetProbability(const Eigen::Array2i& cell, double probability);

  // Extends the grid, keeping cell alignment, until 'point' falls inside a
  // cell. New cells are unknown.
  void GrowToInclude(const Eigen::Vector2d& point);

  const std::vector<double>& cells() const { return cells_; }
  bool operator==(const OccupancyGrid& other) const = default;

 private:
  std::size_t Index(const Eigen::Array2i& cell) const {
    return static_cast<std::size_t>(cell.y()) * nx_ + cell.x();
  }

  Eigen::Vector2d origin_;
  double resolution_;
  int nx_;
  int ny_;
  std::vector<double> cells_;
};

struct SmoothedProbability {
  double value = kUnknownProbability;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();  // per meter
};

// Bilinear interpolation of cell probabilities between cell centers, with
// the analytic gradient with respect to 'point'. Cells outside the grid
// contribute 0.5.
SmoothedProbability SmoothedLookup(const OccupancyGrid& grid,
                                   const Eigen::Vector2d& point);

// Halves the resolution 'levels' times; each coarse cell takes the maximum
// of the cells it covers.
OccupancyGrid Downsample(const OccupancyGrid& grid, int levels);

}  // namespace mapping
}  // namespace magloc

#endif  // MAGLOC_MAPPING_OCCUPANCY_GRID_H_
