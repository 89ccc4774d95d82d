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

#ifndef MAGLOC_BENCH_BENCHMARK_H_
#define MAGLOC_BENCH_BENCHMARK_H_

#include <cstdint>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "magloc/coarse/coarse_localizer.h"
#include "magloc/magnetic/fingerprint_database.h"
#include "magloc/magnetic/mag_grid_map.h"
#include "magloc/mapping/occupancy_grid.h"
#include "magloc/scan_matching/localizer.h"
#include "magloc/transform/pose2.h"
#include "magloc/world/world_io.h"

namespace magloc {
namespace bench {

struct Waypoint {
  int id = 0;
  transform::Pose2 pose;
};

// Waypoints file, '#' comments:
//
//   waypoint ID X Y HEADING_DEG
//
// Throws std::runtime_error naming 'source' and the line on parse errors or
// duplicate ids.
std::vector<Waypoint> ParseWaypoints(std::istream& in,
                                     const std::string& source = "waypoints");
std::vector<Waypoint> LoadWaypoints(const std::string& path);

// How fine localization is initialized.
enum class InitOption : int {
  kLocationAndHeading = 1,
  kLocationOnly = 2,
  kNone = 3,
};

struct TrialSpec {
  int waypoint_id = 0;
  transform::Pose2 start_pose;  // nominal waypoint pose
  InitOption option = InitOption::kLocationAndHeading;
  int trial = 0;
  std::uint64_t seed = 0;
};

struct TrialResult {
  TrialSpec spec;
  transform::Pose2 true_pose;  // start pose after jitter
  bool declared = false;
  bool success = false;
  bool false_positive = false;
  std::optional<double> time_s;
  std::optional<double> translation_error;
  std::optional<double> heading_error;
};

// Seed of one trial, independent of every other trial in the run.
std::uint64_t DeriveTrialSeed(std::uint64_t base_seed, int waypoint_id,
                              int option, int trial);

struct BenchConfig {
  int trials = 10;
  std::uint64_t base_seed = 1;
  double scan_period = 0.1;       // seconds
  double stream_duration = 30.;   // seconds
  double start_sigma_translation = 0.1;  // meters
  double start_sigma_heading = 2. * std::numbers::pi / 180.;
  // A declared pose further than this many grid cells from the truth is a
  // false positive.
  double success_cells = 3.;
  coarse::CoarseConfig coarse;
  scan_matching::MatcherConfig matcher;
};

// Everything localization needs besides the simulated world.
struct Maps {
  magnetic::MagGridMap magmap;
  magnetic::FingerprintDatabase training;  // nodes of 'magmap'
  mapping::OccupancyGrid grid;
};

Maps MakeMaps(magnetic::MagGridMap magmap, mapping::OccupancyGrid grid);

// Runs one trial in 'world': the robot stands at the jittered start pose,
// one magnetometer reading yields the coarse pose (options 1 and 2), and
// lidar scans arrive every scan period until localization is declared or
// the stream ends. Jitter, magnetometer and lidar draw from separate
// streams derived from the trial seed.
TrialResult RunTrial(const world::World& world, const Maps& maps,
                     const scan_matching::Localizer& localizer,
                     const TrialSpec& spec, const BenchConfig& config,
                     std::ostream* trace = nullptr);

// Waypoints x options {1, 2, 3} x trials, in that nesting order.
std::vector<TrialResult> RunBenchmark(const world::World& world,
                                      const Maps& maps,
                                      std::span<const Waypoint> waypoints,
                                      const BenchConfig& config);

// Square root of the mean squared error. Throws std::invalid_argument on an
// empty list.
double ComputeRmse(std::span<const double> errors);

struct OptionSummary {
  int trials = 0;
  int declared = 0;
  int successes = 0;
  int false_positives = 0;
  // Among successes.
  std::optional<double> fastest_s;
  std::optional<double> slowest_s;
  std::optional<double> mean_time_s;
  std::optional<double> rmse_m;

  double success_rate() const {
    return trials > 0 ? static_cast<double>(successes) / trials : 0.;
  }
};

struct BenchmarkReport {
  std::vector<int> waypoint_ids;  // in first-seen order
  std::map<std::pair<int, int>, OptionSummary> per_waypoint;  // (id, option)
  std::map<int, OptionSummary> per_option;
};

BenchmarkReport Summarize(std::span<const TrialResult> results);

void WriteResultsCsv(std::span<const TrialResult> results, std::ostream& out);
// Table with fastest / slowest / average time and RMSE per waypoint and
// option; 'F' marks cells without a successful trial.
void WriteReport(const BenchmarkReport& report, std::ostream& out);

}  // namespace bench
}  // namespace magloc

#endif  // MAGLOC_BENCH_BENCHMARK_H_
