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

#ifndef MAGLOC_SCAN_MATCHING_LOCALIZER_H_
#define MAGLOC_SCAN_MATCHING_LOCALIZER_H_

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "magloc/coarse/coarse_localizer.h"
#include "magloc/mapping/occupancy_grid.h"
#include "magloc/scan_matching/pose_optimizer.h"
#include "magloc/sensor/laser_scan.h"
#include "magloc/transform/pose2.h"

namespace magloc {
namespace scan_matching {

struct ScanFrame {
  double time = 0.;  // seconds since stream start
  sensor::LaserScan scan;
  // Body-frame motion since the previous frame.
  transform::Pose2 odometry;
};

// Returns the next frame, or nothing once the stream is exhausted.
using ScanStream = std::function<std::optional<ScanFrame>()>;

struct LocalizationOutcome {
  bool declared = false;
  transform::Pose2 pose;          // best hypothesis at the end of the run
  double score = 0.;
  std::optional<double> time_s;   // present iff declared
  int scans_processed = 0;
  int refinements = 0;
};

// Seeds for the scan matcher according to which parts of 'init' are known:
// a window around location and heading, a window around location with
// heading zero, or a lattice over the known-free cells of 'grid'.
std::vector<transform::Pose2> GenerateHypotheses(
    const mapping::OccupancyGrid& grid, const coarse::InitialPose& init,
    const MatcherConfig& config);

// Fine localization against one map. The map pyramid is built once and
// reused across runs.
class Localizer {
 public:
  Localizer(const mapping::OccupancyGrid& grid, const MatcherConfig& config);

  const MatcherConfig& config() const { return config_; }
  const mapping::OccupancyGrid& grid() const { return pyramid_.front(); }

  // Coarse-to-fine refinement of one seed against 'endpoints'.
  MatchResult Refine(std::span<const Eigen::Vector2d> endpoints,
                     const transform::Pose2& seed) const;

  // Every scan period allows 'refinements_per_scan' seed refinements. Once
  // all seeds are refined, the best 'tracked_hypotheses' distinct poses are
  // re-refined on every new scan. Localization is declared once the best
  // score reaches 'success_score' on 'consecutive_scans' scans in a row.
  // When 'trace' is given, every Gauss-Newton iterate is written to it as
  // CSV.
  LocalizationOutcome Run(const ScanStream& stream,
                          const coarse::InitialPose& init,
                          std::ostream* trace = nullptr) const;

 private:
  MatcherConfig config_;
  // Index 0 is the full-resolution map.
  std::vector<mapping::OccupancyGrid> pyramid_;
};

LocalizationOutcome Localize(const mapping::OccupancyGrid& grid,
                             const ScanStream& stream,
                             const coarse::InitialPose& init,
                             const MatcherConfig& config);

}  // namespace scan_matching
}  // namespace magloc

#endif  // MAGLOC_SCAN_MATCHING_LOCALIZER_H_
