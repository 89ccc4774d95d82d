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

#include "magloc/world/floor_plan.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace magloc {
namespace world {
namespace {

constexpr double kEpsilon = 1e-12;

double Cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

bool IsFiniteBox(const Box& box) {
  return box.min.allFinite() && box.max.allFinite() &&
         box.min.x() < box.max.x() && box.min.y() < box.max.y();
}

std::vector<Segment> BoxEdges(const Box& box) {
  const Eigen::Vector2d p00 = box.min;
  const Eigen::Vector2d p10(box.max.x(), box.min.y());
  const Eigen::Vector2d p11 = box.max;
  const Eigen::Vector2d p01(box.min.x(), box.max.y());
  return {{p00, p10}, {p10, p11}, {p11, p01}, {p01, p00}};
}

// Proper or touching intersection of the closed segments [p, q] and [a, b].
bool SegmentsIntersect(const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                       const Segment& s) {
  const Eigen::Vector2d r = q - p;
  const Eigen::Vector2d d = s.b - s.a;
  const double denominator = Cross(r, d);
  const Eigen::Vector2d ap = s.a - p;
  if (std::abs(denominator) < kEpsilon) {
    // Parallel: only collinear overlap counts.
    if (std::abs(Cross(ap, r)) > kEpsilon) return false;
    const double rr = r.squaredNorm();
    if (rr < kEpsilon) return PointToSegmentDistance(p, s) < kEpsilon;
    const double t0 = ap.dot(r) / rr;
    const double t1 = (s.b - p).dot(r) / rr;
    return std::max(t0, t1) >= 0. && std::min(t0, t1) <= 1.;
  }
  const double t = Cross(ap, d) / denominator;
  const double u = Cross(ap, r) / denominator;
  return t >= 0. && t <= 1. && u >= 0. && u <= 1.;
}

}  // namespace

double PointToSegmentDistance(const Eigen::Vector2d& p, const Segment& s) {
  const Eigen::Vector2d d = s.b - s.a;
  const double length_squared = d.squaredNorm();
  double t = 0.;
  if (length_squared > 0.) {
    t = std::clamp((p - s.a).dot(d) / length_squared, 0., 1.);
  }
  return (p - (s.a + t * d)).norm();
}

FloorPlan::FloorPlan(const Box& bounds, std::vector<Segment> segments,
                     std::vector<Box> blocks)
    : bounds_(bounds), segments_(std::move(segments)),
      blocks_(std::move(blocks)) {
  if (!IsFiniteBox(bounds_)) {
    throw std::invalid_argument("FloorPlan: bounds must be a finite, "
                                "non-empty rectangle");
  }
  for (const Box& block : blocks_) {
    if (!IsFiniteBox(block)) {
      throw std::invalid_argument("FloorPlan: degenerate block");
    }
    for (const Segment& edge : BoxEdges(block)) segments_.push_back(edge);
  }
  for (const Segment& segment : segments_) {
    if (!segment.a.allFinite() || !segment.b.allFinite() ||
        !(segment.Length() > 0.)) {
      throw std::invalid_argument("FloorPlan: zero-length or non-finite wall");
    }
    if (!bounds_.Contains(segment.a) || !bounds_.Contains(segment.b)) {
      throw std::invalid_argument("FloorPlan: wall outside bounds");
    }
  }
}

double FloorPlan::DistanceToNearestWall(const Eigen::Vector2d& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& segment : segments_) {
    best = std::min(best, PointToSegmentDistance(p, segment));
  }
  return best;
}

bool FloorPlan::IsFree(const Eigen::Vector2d& p, const double clearance) const {
  if (!p.allFinite() || !bounds_.Contains(p)) return false;
  for (const Box& block : blocks_) {
    if (block.Contains(p)) return false;
  }
  return DistanceToNearestWall(p) >= clearance;
}

bool FloorPlan::IsSegmentFree(const Eigen::Vector2d& from,
                              const Eigen::Vector2d& to) const {
  if (!IsFree(from) || !IsFree(to)) return false;
  for (const Segment& segment : segments_) {
    if (SegmentsIntersect(from, to, segment)) return false;
  }
  return true;
}

std::optional<double> FloorPlan::Raycast(
    const Eigen::Vector2d& origin, const Eigen::Vector2d& direction) const {
  std::optional<double> nearest;
  for (const Segment& segment : segments_) {
    const Eigen::Vector2d d = segment.b - segment.a;
    const double denominator = Cross(direction, d);
    if (std::abs(denominator) < kEpsilon) continue;
    const Eigen::Vector2d ao = segment.a - origin;
    const double t = Cross(ao, d) / denominator;
    const double u = Cross(ao, direction) / denominator;
    if (t < 0. || u < 0. || u > 1.) continue;
    if (!nearest || t < *nearest) nearest = t;
  }
  return nearest;
}

FloorPlan MakeCorridorLoop(const double width, const double height,
                           const double corridor_width) {
  const Box outer{{0., 0.}, {width, height}};
  const Box inner{{corridor_width, corridor_width},
                  {width - corridor_width, height - corridor_width}};
  return FloorPlan(outer, BoxEdges(outer), {inner});
}

}  // namespace world
}  // namespace magloc
