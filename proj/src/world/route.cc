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

#include "magloc/world/route.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace magloc {
namespace world {
namespace {

struct Leg {
  Eigen::Vector2d from;
  Eigen::Vector2d to;
  double start_distance;
  double length;
  double heading;
};

}  // namespace

double SnapToWallParallel(const double heading) {
  constexpr double kQuarterTurn = 0.5 * std::numbers::pi;
  return transform::NormalizeAngle(std::round(heading / kQuarterTurn) *
                                   kQuarterTurn);
}

std::vector<GroundTruthState> DriveRoute(
    const FloorPlan& plan, std::span<const transform::Pose2> waypoints,
    const double speed, const double sample_dt) {
  if (waypoints.empty()) {
    throw std::invalid_argument("DriveRoute: no waypoints");
  }
  if (!(speed > 0.) || !(sample_dt > 0.)) {
    throw std::invalid_argument("DriveRoute: speed and sample_dt must be > 0");
  }
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    if (!waypoints[i].IsFinite() || !plan.IsFree(waypoints[i].translation())) {
      throw RouteError(i, "DriveRoute: waypoint " + std::to_string(i) +
                              " is outside free space");
    }
  }

  std::vector<Leg> legs;
  double total_length = 0.;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const Eigen::Vector2d from = waypoints[i - 1].translation();
    const Eigen::Vector2d to = waypoints[i].translation();
    const double length = (to - from).norm();
    if (length == 0.) continue;
    if (!plan.IsSegmentFree(from, to)) {
      throw RouteError(i, "DriveRoute: leg into waypoint " + std::to_string(i) +
                              " crosses a wall");
    }
    const Eigen::Vector2d delta = to - from;
    legs.push_back({from, to, total_length, length,
                    SnapToWallParallel(std::atan2(delta.y(), delta.x()))});
    total_length += length;
  }
  if (legs.empty()) {
    return {{waypoints.front(), 0.}};
  }

  const auto state_at = [&](const double time) {
    const double distance = std::min(time * speed, total_length);
    auto it = std::upper_bound(
        legs.begin(), legs.end(), distance,
        [](double d, const Leg& leg) { return d < leg.start_distance; });
    const Leg& leg = *std::prev(it);
    const double fraction = std::min(
        1., (distance - leg.start_distance) / leg.length);
    return GroundTruthState{
        transform::Pose2(leg.from + fraction * (leg.to - leg.from),
                         leg.heading),
        time};
  };

  const double total_time = total_length / speed;
  const double end_tolerance = 1e-9 * std::max(1., total_time);
  std::vector<GroundTruthState> states;
  for (long k = 0;; ++k) {
    const double time = k * sample_dt;
    if (time >= total_time - end_tolerance) break;
    states.push_back(state_at(time));
  }
  states.push_back({transform::Pose2(legs.back().to, legs.back().heading),
                    total_time});
  return states;
}

}  // namespace world
}  // namespace magloc
