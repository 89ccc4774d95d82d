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

#ifndef MAGLOC_WORLD_FLOOR_PLAN_H_
#define MAGLOC_WORLD_FLOOR_PLAN_H_

#include <optional>
#include <vector>

#include "Eigen/Core"

namespace magloc {
namespace world {

struct Segment {
  Eigen::Vector2d a;
  Eigen::Vector2d b;

  double Length() const { return (b - a).norm(); }
};

// Axis-aligned rectangle, closed on all sides.
struct Box {
  Eigen::Vector2d min;
  Eigen::Vector2d max;

  bool Contains(const Eigen::Vector2d& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
           p.y() <= max.y();
  }
  Eigen::Vector2d Size() const { return max - min; }
};

// Walls as line segments inside 'bounds'. Solid 'blocks' (e.g. the office
// block a corridor wraps around) contribute their four edges as walls and
// their interior is never free space.
class FloorPlan {
 public:
  static constexpr double kDefaultClearance = 0.05;

  FloorPlan() = default;
  FloorPlan(const Box& bounds, std::vector<Segment> segments,
            std::vector<Box> blocks = {});

  const Box& bounds() const { return bounds_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<Box>& blocks() const { return blocks_; }

  // Inside bounds, outside every block, and at least 'clearance' from walls.
  bool IsFree(const Eigen::Vector2d& p,
              double clearance = kDefaultClearance) const;
  // Both endpoints free and no wall crossed in between.
  bool IsSegmentFree(const Eigen::Vector2d& from,
                     const Eigen::Vector2d& to) const;
  double DistanceToNearestWall(const Eigen::Vector2d& p) const;

  // Distance along the unit vector 'direction' to the first wall, if any.
  std::optional<double> Raycast(const Eigen::Vector2d& origin,
                                const Eigen::Vector2d& direction) const;

 private:
  Box bounds_{{0., 0.}, {0., 0.}};
  std::vector<Segment> segments_;
  std::vector<Box> blocks_;
};

double PointToSegmentDistance(const Eigen::Vector2d& p, const Segment& s);

// Rectangular corridor loop: outer walls on [0, width] x [0, height] and an
// inner block inset by 'corridor_width' on every side.
FloorPlan MakeCorridorLoop(double width, double height, double corridor_width);

}  // namespace world
}  // namespace magloc

#endif  // MAGLOC_WORLD_FLOOR_PLAN_H_
