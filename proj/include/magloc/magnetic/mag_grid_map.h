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

#ifndef MAGLOC_MAGNETIC_MAG_GRID_MAP_H_
#define MAGLOC_MAGNETIC_MAG_GRID_MAP_H_

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "magloc/magnetic/fingerprint_database.h"

namespace magloc {
namespace magnetic {

// Bilinear interpolation inside the axis-aligned cell spanned by 'corners',
// given in the order (x1,y1), (x2,y1), (x1,y2), (x2,y2). Interpolates along
// x on both rows, then along y. Throws std::domain_error if x1 == x2 or
// y1 == y2 and std::invalid_argument if the corners are not an axis-aligned
// rectangle or the query lies outside it.
Eigen::Vector3d BilinearInterpolate(std::span<const MagFingerprint, 4> corners,
                                    const Eigen::Vector2d& query);

// Regular lattice of field vectors. Node (ix, iy) sits at
// origin + resolution * (ix, iy); absent nodes were neither observed nor
// bracketed by observations.
class MagGridMap {
 public:
  MagGridMap(const Eigen::Vector2d& origin, double resolution, int nx, int ny);

  const Eigen::Vector2d& origin() const { return origin_; }
  double resolution() const { return resolution_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  Eigen::Vector2d NodeLocation(int ix, int iy) const {
    return origin_ + resolution_ * Eigen::Vector2d(ix, iy);
  }
  bool Contains(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < nx_ && iy < ny_;
  }
  const std::optional<Eigen::Vector3d>& at(int ix, int iy) const {
    return nodes_[Index(ix, iy)];
  }
  void set(int ix, int iy, const std::optional<Eigen::Vector3d>& field) {
    nodes_[Index(ix, iy)] = field;
  }
  int CountPresent() const;

  bool operator==(const MagGridMap& other) const;

 private:
  std::size_t Index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * nx_ + ix;
  }

  Eigen::Vector2d origin_;
  double resolution_;
  int nx_;
  int ny_;
  std::vector<std::optional<Eigen::Vector3d>> nodes_;
};

struct GridMapOptions {
  double resolution = 0.1;
  // Largest side of a bracketing cell used to fill an empty node.
  double max_fill_span = 1.0;
};

// Bins fingerprints to their nearest node (averaging duplicates), then fills
// each empty node from the smallest axis-aligned cell of four observed nodes
// that contains it. Nodes no such cell brackets stay absent.
MagGridMap BuildGridMap(const FingerprintDatabase& db,
                        const GridMapOptions& options);

// Bilinear lookup over the four surrounding nodes. Corners carrying zero
// weight are ignored, so a query exactly on a present node returns it; any
// absent corner with nonzero weight makes the result absent.
std::optional<Eigen::Vector3d> QueryField(const MagGridMap& map,
                                          const Eigen::Vector2d& point);

// Present nodes as a database in row-major order, the k-NN training set.
FingerprintDatabase MapNodesAsDatabase(const MagGridMap& map);

// Text format: header line 'origin_x origin_y resolution nx ny', then ny rows
// (iy = 0 first) of nx space-separated entries 'bx,by,bz' or '-'.
void WriteMagGridMap(const MagGridMap& map, std::ostream& out);
MagGridMap ReadMagGridMap(std::istream& in);

}  // namespace magnetic
}  // namespace magloc

#endif  // MAGLOC_MAGNETIC_MAG_GRID_MAP_H_
