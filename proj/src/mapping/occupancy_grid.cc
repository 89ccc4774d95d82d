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

#include "magloc/mapping/occupancy_grid.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magloc {
namespace mapping {

OccupancyGrid::OccupancyGrid(const Eigen::Vector2d& origin,
                             const double resolution, const int nx,
                             const int ny)
    : origin_(origin), resolution_(resolution), nx_(nx), ny_(ny) {
  if (!(resolution > 0.) || !std::isfinite(resolution)) {
    throw std::invalid_argument("OccupancyGrid: resolution must be > 0");
  }
  if (nx <= 0 || ny <= 0 || !origin.allFinite()) {
    throw std::invalid_argument("OccupancyGrid: bad extent");
  }
  cells_.assign(static_cast<std::size_t>(nx) * ny, kUnknownProbability);
}

Eigen::Array2i OccupancyGrid::CellIndex(const Eigen::Vector2d& point) const {
  return Eigen::Array2i(
      static_cast<int>(std::floor((point.x() - origin_.x()) / resolution_)),
      static_cast<int>(std::floor((point.y() - origin_.y()) / resolution_)));
}

Eigen::Vector2d OccupancyGrid::CellCenter(const Eigen::Array2i& cell) const {
  return origin_ + resolution_ * Eigen::Vector2d(cell.x() + 0.5, cell.y() + 0.5);
}

void OccupancyGrid::SetProbability(const Eigen::Array2i& cell,
                                   const double probability) {
  if (!Contains(cell)) {
    throw std::invalid_argument("OccupancyGrid: cell outside grid");
  }
  if (!(probability >= 0. && probability <= 1.)) {
    throw std::invalid_argument("OccupancyGrid: probability outside [0, 1]");
  }
  cells_[Index(cell)] = probability;
}

void OccupancyGrid::GrowToInclude(const Eigen::Vector2d& point) {
  if (!point.allFinite()) {
    throw std::invalid_argument("OccupancyGrid: cannot grow to a non-finite point");
  }
  const Eigen::Array2i cell = CellIndex(point);
  if (Contains(cell)) return;
  // Grow by at least half the current size on the needed sides to keep the
  // number of reallocations logarithmic.
  const int pad_x = std::max(nx_ / 2, 1);
  const int pad_y = std::max(ny_ / 2, 1);
  const int add_left = cell.x() < 0 ? std::max(-cell.x(), pad_x) : 0;
  const int add_bottom = cell.y() < 0 ? std::max(-cell.y(), pad_y) : 0;
  const int add_right = cell.x() >= nx_ ? std::max(cell.x() - nx_ + 1, pad_x) : 0;
  const int add_top = cell.y() >= ny_ ? std::max(cell.y() - ny_ + 1, pad_y) : 0;

  const int new_nx = nx_ + add_left + add_right;
  const int new_ny = ny_ + add_bottom + add_top;
  std::vector<double> grown(static_cast<std::size_t>(new_nx) * new_ny,
                            kUnknownProbability);
  for (int iy = 0; iy < ny_; ++iy) {
    std::copy_n(cells_.begin() + static_cast<std::size_t>(iy) * nx_, nx_,
                grown.begin() +
                    static_cast<std::size_t>(iy + add_bottom) * new_nx +
                    add_left);
  }
  origin_ -= resolution_ * Eigen::Vector2d(add_left, add_bottom);
  nx_ = new_nx;
  ny_ = new_ny;
  cells_ = std::move(grown);
}

SmoothedProbability SmoothedLookup(const OccupancyGrid& grid,
                                   const Eigen::Vector2d& point) {
  const double resolution = grid.resolution();
  // Continuous index measured from the center of cell (0, 0).
  const double u = (point.x() - grid.origin().x()) / resolution - 0.5;
  const double v = (point.y() - grid.origin().y()) / resolution - 0.5;
  const double floor_u = std::floor(u);
  const double floor_v = std::floor(v);
  const double fx = u - floor_u;
  const double fy = v - floor_v;
  const Eigen::Array2i base(static_cast<int>(floor_u),
                            static_cast<int>(floor_v));
  const double p00 = grid.probability(base);
  const double p10 = grid.probability(base + Eigen::Array2i(1, 0));
  const double p01 = grid.probability(base + Eigen::Array2i(0, 1));
  const double p11 = grid.probability(base + Eigen::Array2i(1, 1));

  const double bottom = (1. - fx) * p00 + fx * p10;
  const double top = (1. - fx) * p01 + fx * p11;
  SmoothedProbability result;
  result.value = (1. - fy) * bottom + fy * top;
  result.gradient.x() =
      ((1. - fy) * (p10 - p00) + fy * (p11 - p01)) / resolution;
  result.gradient.y() = (top - bottom) / resolution;
  return result;
}

OccupancyGrid Downsample(const OccupancyGrid& grid, const int levels) {
  if (levels < 0) {
    throw std::invalid_argument("Downsample: negative level count");
  }
  const int factor = 1 << levels;
  const int nx = (grid.nx() + factor - 1) / factor;
  const int ny = (grid.ny() + factor - 1) / factor;
  OccupancyGrid coarse(grid.origin(), grid.resolution() * factor, nx, ny);
  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      double max_probability = 0.;
      for (int dy = 0; dy < factor; ++dy) {
        for (int dx = 0; dx < factor; ++dx) {
          max_probability = std::max(
              max_probability,
              grid.probability({cx * factor + dx, cy * factor + dy}));
        }
      }
      coarse.SetProbability({cx, cy}, max_probability);
    }
  }
  return coarse;
}

}  // namespace mapping
}  // namespace magloc
