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

#ifndef MAGLOC_SCAN_MATCHING_POSE_OPTIMIZER_H_
#define MAGLOC_SCAN_MATCHING_POSE_OPTIMIZER_H_

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "magloc/mapping/occupancy_grid.h"
#include "magloc/sensor/laser_scan.h"
#include "magloc/transform/pose2.h"

namespace magloc {
namespace scan_matching {

struct MatcherConfig {
  int max_iterations = 30;
  double translation_tolerance = 1e-4;  // meters
  double rotation_tolerance = 1e-4;     // radians
  int max_step_halvings = 8;
  // A hypothesis counts as matched while its score is at least this.
  double success_score = 0.85;
  int consecutive_scans = 3;

  // Local multi-start around an initial location: +/- window, sampled at
  // the search step, in (x, y, heading).
  Eigen::Vector3d search_window{1.0, 1.0, 0.};
  double search_step_translation = 0.5;
  double search_step_rotation = 10. * std::numbers::pi / 180.;
  // Global multi-start when no location is known.
  double global_step_translation = 1.0;
  double global_step_rotation = 0.5 * std::numbers::pi;

  // Coarse-to-fine refinement: grids at 2^levels ... 2^0 times the map
  // resolution.
  int pyramid_levels = 3;
  // Full coarse-to-fine refinements that fit into one scan period.
  int refinements_per_scan = 32;
  // Hypotheses kept and re-refined on every scan once the search is done.
  int tracked_hypotheses = 4;
};

struct MatchCost {
  double cost = 0.;
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();  // d cost / d(x, y, psi)
};

// sum_j (1 - M_smooth(T_pose s_j))^2 and its gradient.
MatchCost ComputeMatchCost(const mapping::OccupancyGrid& grid,
                           std::span<const Eigen::Vector2d> endpoints,
                           const transform::Pose2& pose);
// Throws std::invalid_argument if the scan has no returning beam.
MatchCost ComputeMatchCost(const mapping::OccupancyGrid& grid,
                           const sensor::LaserScan& scan,
                           const transform::Pose2& pose);

// Mean of M_smooth over the transformed endpoints, in [0, 1].
double MatchScore(const mapping::OccupancyGrid& grid,
                  std::span<const Eigen::Vector2d> endpoints,
                  const transform::Pose2& pose);

struct MatchResult {
  transform::Pose2 pose;
  double score = 0.;
  double cost = 0.;
  double initial_cost = 0.;
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;
};

struct IterationTrace {
  int iteration;
  transform::Pose2 pose;
  double cost;
};

// Gauss-Newton on r_j = 1 - M_smooth(T_pose s_j). A step is halved while it
// would increase the cost, at most 'max_step_halvings' times; iteration stops
// once the accepted step is below both tolerances or after 'max_iterations'.
// The returned cost never exceeds the cost at 'initial'. Singular normal
// equations end the run unconverged with a diagnostic. Each accepted
// iterate is appended to 'trace' when given.
MatchResult OptimizePose(const mapping::OccupancyGrid& grid,
                         std::span<const Eigen::Vector2d> endpoints,
                         const transform::Pose2& initial,
                         const MatcherConfig& config,
                         std::vector<IterationTrace>* trace = nullptr);

}  // namespace scan_matching
}  // namespace magloc

#endif  // MAGLOC_SCAN_MATCHING_POSE_OPTIMIZER_H_
