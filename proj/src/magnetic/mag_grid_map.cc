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

#include "magloc/magnetic/mag_grid_map.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace magloc {
namespace magnetic {
namespace {

constexpr double kGeometryTolerance = 1e-12;

bool Near(double a, double b) {
  return std::abs(a - b) <= kGeometryTolerance * std::max(1., std::abs(a));
}

struct Cell {
  int i1, i2, j1, j2;
  long Area() const { return static_cast<long>(i2 - i1) * (j2 - j1); }
};

}  // namespace

Eigen::Vector3d BilinearInterpolate(std::span<const MagFingerprint, 4> corners,
                                    const Eigen::Vector2d& query) {
  const MagFingerprint& p11 = corners[0];
  const MagFingerprint& p21 = corners[1];
  const MagFingerprint& p12 = corners[2];
  const MagFingerprint& p22 = corners[3];
  const double x1 = p11.location.x();
  const double x2 = p21.location.x();
  const double y1 = p11.location.y();
  const double y2 = p12.location.y();
  if (x1 == x2 || y1 == y2) {
    throw std::domain_error("BilinearInterpolate: degenerate cell");
  }
  if (!Near(p21.location.y(), y1) || !Near(p12.location.x(), x1) ||
      !Near(p22.location.x(), x2) || !Near(p22.location.y(), y2) ||
      !(x1 < x2) || !(y1 < y2)) {
    throw std::invalid_argument(
        "BilinearInterpolate: corners are not (x1,y1),(x2,y1),(x1,y2),(x2,y2) "
        "with x1 < x2, y1 < y2");
  }
  const double x = query.x();
  const double y = query.y();
  const double slack_x = kGeometryTolerance * (x2 - x1);
  const double slack_y = kGeometryTolerance * (y2 - y1);
  if (x < x1 - slack_x || x > x2 + slack_x || y < y1 - slack_y ||
      y > y2 + slack_y) {
    throw std::invalid_argument("BilinearInterpolate: query outside the cell");
  }

  const double dx = x2 - x1;
  const Eigen::Vector3d along_y1 =
      (x2 - x) / dx * p11.field + (x - x1) / dx * p21.field;
  const Eigen::Vector3d along_y2 =
      (x2 - x) / dx * p12.field + (x - x1) / dx * p22.field;
  const double dy = y2 - y1;
  return (y2 - y) / dy * along_y1 + (y - y1) / dy * along_y2;
}

MagGridMap::MagGridMap(const Eigen::Vector2d& origin, const double resolution,
                       const int nx, const int ny)
    : origin_(origin), resolution_(resolution), nx_(nx), ny_(ny) {
  if (!(resolution > 0.) || !std::isfinite(resolution)) {
    throw std::invalid_argument("MagGridMap: resolution must be > 0");
  }
  if (nx <= 0 || ny <= 0 || !origin.allFinite()) {
    throw std::invalid_argument("MagGridMap: bad extent");
  }
  nodes_.resize(static_cast<std::size_t>(nx) * ny);
}

int MagGridMap::CountPresent() const {
  int count = 0;
  for (const auto& node : nodes_) count += node.has_value();
  return count;
}

bool MagGridMap::operator==(const MagGridMap& other) const {
  return origin_ == other.origin_ && resolution_ == other.resolution_ &&
         nx_ == other.nx_ && ny_ == other.ny_ && nodes_ == other.nodes_;
}

MagGridMap BuildGridMap(const FingerprintDatabase& db,
                        const GridMapOptions& options) {
  const double resolution = options.resolution;
  if (!(resolution > 0.)) {
    throw std::invalid_argument("BuildGridMap: resolution must be > 0");
  }
  if (db.empty()) {
    throw std::invalid_argument("BuildGridMap: empty database");
  }

  Eigen::Vector2d min = db.entries.front().location;
  Eigen::Vector2d max = min;
  for (const MagFingerprint& fp : db.entries) {
    min = min.cwiseMin(fp.location);
    max = max.cwiseMax(fp.location);
  }
  const Eigen::Vector2d origin(std::floor(min.x() / resolution) * resolution,
                               std::floor(min.y() / resolution) * resolution);
  const auto node_of = [&](const Eigen::Vector2d& p) {
    return Eigen::Vector2i(
        static_cast<int>(std::lround((p.x() - origin.x()) / resolution)),
        static_cast<int>(std::lround((p.y() - origin.y()) / resolution)));
  };
  const Eigen::Vector2i max_node = node_of(max);
  MagGridMap map(origin, resolution, max_node.x() + 1, max_node.y() + 1);
  const int nx = map.nx();
  const int ny = map.ny();

  std::vector<Eigen::Vector3d> sums(static_cast<std::size_t>(nx) * ny,
                                    Eigen::Vector3d::Zero());
  std::vector<int> counts(sums.size(), 0);
  for (const MagFingerprint& fp : db.entries) {
    const Eigen::Vector2i node = node_of(fp.location);
    const std::size_t index = static_cast<std::size_t>(node.y()) * nx + node.x();
    sums[index] += fp.field;
    ++counts[index];
  }
  const auto observed = [&](int ix, int iy) {
    return counts[static_cast<std::size_t>(iy) * nx + ix] > 0;
  };
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t index = static_cast<std::size_t>(iy) * nx + ix;
      if (counts[index] == 1) {
        map.set(ix, iy, sums[index]);
      } else if (counts[index] > 1) {
        map.set(ix, iy, sums[index] / counts[index]);
      }
    }
  }

  const int max_span = static_cast<int>(
      std::floor(options.max_fill_span / resolution + 1e-9));
  if (max_span < 1) return map;

  // Fill from observed nodes only; values written here never feed back.
  const MagGridMap observed_map = map;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (observed(i, j)) continue;
      std::optional<Cell> best;
      for (int j1 = j; j1 >= std::max(0, j - max_span); --j1) {
        for (int j2 = std::max(j, j1 + 1);
             j2 <= std::min(ny - 1, j1 + max_span); ++j2) {
          const auto both = [&](int c) {
            return observed(c, j1) && observed(c, j2);
          };
          int left = -1;
          for (int c = i; c >= std::max(0, i - max_span); --c) {
            if (both(c)) { left = c; break; }
          }
          int right = -1;
          for (int c = i; c <= std::min(nx - 1, i + max_span); ++c) {
            if (both(c)) { right = c; break; }
          }
          if (left < 0 || right < 0) continue;
          std::optional<Cell> cell;
          if (left < right) {
            cell = Cell{left, right, j1, j2};
          } else {
            // Column i itself is observed on both rows; pair it with the
            // nearer observed column on either side.
            for (int c = i - 1; c >= std::max(0, i - max_span); --c) {
              if (both(c)) { cell = Cell{c, i, j1, j2}; break; }
            }
            for (int c = i + 1; c <= std::min(nx - 1, i + max_span); ++c) {
              if (both(c)) {
                if (!cell || c - i < cell->i2 - cell->i1) {
                  cell = Cell{i, c, j1, j2};
                }
                break;
              }
            }
          }
          if (!cell || cell->i2 - cell->i1 > max_span) continue;
          if (!best || cell->Area() < best->Area()) best = cell;
        }
      }
      if (!best) continue;
      const std::array<MagFingerprint, 4> corners = {
          MagFingerprint{observed_map.NodeLocation(best->i1, best->j1),
                         *observed_map.at(best->i1, best->j1)},
          MagFingerprint{observed_map.NodeLocation(best->i2, best->j1),
                         *observed_map.at(best->i2, best->j1)},
          MagFingerprint{observed_map.NodeLocation(best->i1, best->j2),
                         *observed_map.at(best->i1, best->j2)},
          MagFingerprint{observed_map.NodeLocation(best->i2, best->j2),
                         *observed_map.at(best->i2, best->j2)}};
      map.set(i, j, BilinearInterpolate(corners, map.NodeLocation(i, j)));
    }
  }
  return map;
}

std::optional<Eigen::Vector3d> QueryField(const MagGridMap& map,
                                          const Eigen::Vector2d& point) {
  if (!point.allFinite()) return std::nullopt;
  const Eigen::Vector2d u = (point - map.origin()) / map.resolution();
  const double fi = std::floor(u.x());
  const double fj = std::floor(u.y());
  if (fi < -1. || fj < -1. || fi > map.nx() || fj > map.ny()) {
    return std::nullopt;
  }
  const int i0 = static_cast<int>(fi);
  const int j0 = static_cast<int>(fj);
  const double fx = u.x() - fi;
  const double fy = u.y() - fj;
  Eigen::Vector3d field = Eigen::Vector3d::Zero();
  for (int dj = 0; dj < 2; ++dj) {
    for (int di = 0; di < 2; ++di) {
      const double weight = (di ? fx : 1. - fx) * (dj ? fy : 1. - fy);
      if (weight == 0.) continue;
      if (!map.Contains(i0 + di, j0 + dj)) return std::nullopt;
      const auto& node = map.at(i0 + di, j0 + dj);
      if (!node) return std::nullopt;
      field += weight * *node;
    }
  }
  return field;
}

FingerprintDatabase MapNodesAsDatabase(const MagGridMap& map) {
  FingerprintDatabase db;
  for (int iy = 0; iy < map.ny(); ++iy) {
    for (int ix = 0; ix < map.nx(); ++ix) {
      if (const auto& node = map.at(ix, iy)) {
        db.entries.push_back({map.NodeLocation(ix, iy), *node});
      }
    }
  }
  return db;
}

void WriteMagGridMap(const MagGridMap& map, std::ostream& out) {
  char buffer[128];
  std::snprintf(buffer, sizeof(buffer), "%.17g %.17g %.17g %d %d\n",
                map.origin().x(), map.origin().y(), map.resolution(),
                map.nx(), map.ny());
  out << buffer;
  for (int iy = 0; iy < map.ny(); ++iy) {
    for (int ix = 0; ix < map.nx(); ++ix) {
      if (ix > 0) out << ' ';
      if (const auto& node = map.at(ix, iy)) {
        std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g", node->x(),
                      node->y(), node->z());
        out << buffer;
      } else {
        out << '-';
      }
    }
    out << '\n';
  }
}

MagGridMap ReadMagGridMap(std::istream& in) {
  double origin_x, origin_y, resolution;
  int nx, ny;
  if (!(in >> origin_x >> origin_y >> resolution >> nx >> ny)) {
    throw std::runtime_error("magnetic map: malformed header");
  }
  if (!(resolution > 0.) || nx <= 0 || ny <= 0) {
    throw std::runtime_error("magnetic map: invalid header values");
  }
  MagGridMap map({origin_x, origin_y}, resolution, nx, ny);
  std::string token;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (!(in >> token)) {
        throw std::runtime_error("magnetic map: truncated at node (" +
                                 std::to_string(ix) + ", " +
                                 std::to_string(iy) + ")");
      }
      if (token == "-") continue;
      Eigen::Vector3d field;
      const char* cursor = token.c_str();
      for (int k = 0; k < 3; ++k) {
        char* end = nullptr;
        field[k] = std::strtod(cursor, &end);
        const char expected = k < 2 ? ',' : '\0';
        if (end == cursor || *end != expected) {
          throw std::runtime_error("magnetic map: bad entry '" + token + "'");
        }
        cursor = end + (k < 2 ? 1 : 0);
      }
      map.set(ix, iy, field);
    }
  }
  return map;
}

}  // namespace magnetic
}  // namespace magloc
