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

#include "magloc/bench/benchmark.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "magloc/world/sensors.h"

namespace magloc {
namespace bench {
namespace {

constexpr int kOptions[] = {1, 2, 3};
constexpr int kMaxJitterAttempts = 100;
constexpr double kStartClearance = 0.2;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent random streams of one trial.
enum Stream : std::uint64_t { kJitter = 1, kMagnetometer = 2, kLidar = 3 };

world::RandomEngine MakeEngine(std::uint64_t trial_seed, Stream stream) {
  return world::RandomEngine(SplitMix64(trial_seed ^ SplitMix64(stream)));
}

transform::Pose2 JitteredStart(const world::FloorPlan& plan,
                               const transform::Pose2& nominal,
                               const BenchConfig& config,
                               world::RandomEngine* rng) {
  std::normal_distribution<double> translation(0.,
                                               config.start_sigma_translation);
  std::normal_distribution<double> heading(0., config.start_sigma_heading);
  for (int attempt = 0; attempt < kMaxJitterAttempts; ++attempt) {
    const double dx = translation(*rng);
    const double dy = translation(*rng);
    const double dh = heading(*rng);
    const transform::Pose2 pose(nominal.x + dx, nominal.y + dy,
                                nominal.heading + dh);
    if (plan.IsFree(pose.translation(), kStartClearance)) return pose;
  }
  return nominal;
}

void Accumulate(const TrialResult& result, OptionSummary* summary,
                std::vector<double>* times, std::vector<double>* errors) {
  ++summary->trials;
  if (result.declared) ++summary->declared;
  if (result.false_positive) ++summary->false_positives;
  if (!result.success) return;
  ++summary->successes;
  times->push_back(*result.time_s);
  errors->push_back(*result.translation_error);
}

void Finish(const std::vector<double>& times, const std::vector<double>& errors,
            OptionSummary* summary) {
  if (times.empty()) return;
  summary->fastest_s = *std::min_element(times.begin(), times.end());
  summary->slowest_s = *std::max_element(times.begin(), times.end());
  double sum = 0.;
  for (const double t : times) sum += t;
  summary->mean_time_s = sum / times.size();
  summary->rmse_m = ComputeRmse(errors);
}

std::string Cell(const std::optional<double>& value, const char* format) {
  if (!value) return "F";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), format, *value);
  return buffer;
}

}  // namespace

std::vector<Waypoint> ParseWaypoints(std::istream& in,
                                     const std::string& source) {
  std::vector<Waypoint> waypoints;
  std::set<int> ids;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string where = source + ":" + std::to_string(line_number);
    line = line.substr(0, line.find('#'));
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword)) continue;
    if (keyword != "waypoint") {
      throw std::runtime_error(where + ": unknown directive '" + keyword + "'");
    }
    Waypoint waypoint;
    double x, y, heading_deg;
    std::string extra;
    if (!(tokens >> waypoint.id >> x >> y >> heading_deg) ||
        (tokens >> extra) || !std::isfinite(x) || !std::isfinite(y) ||
        !std::isfinite(heading_deg)) {
      throw std::runtime_error(where +
                               ": expected 'waypoint ID X Y HEADING_DEG'");
    }
    if (!ids.insert(waypoint.id).second) {
      throw std::runtime_error(where + ": duplicate waypoint id " +
                               std::to_string(waypoint.id));
    }
    waypoint.pose =
        transform::Pose2(x, y, heading_deg * std::numbers::pi / 180.);
    waypoints.push_back(waypoint);
  }
  if (waypoints.empty()) throw std::runtime_error(source + ": no waypoints");
  return waypoints;
}

std::vector<Waypoint> LoadWaypoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return ParseWaypoints(in, path);
}

std::uint64_t DeriveTrialSeed(const std::uint64_t base_seed,
                              const int waypoint_id, const int option,
                              const int trial) {
  std::uint64_t h = SplitMix64(base_seed);
  h = SplitMix64(h ^ static_cast<std::uint32_t>(waypoint_id));
  h = SplitMix64(h ^ static_cast<std::uint32_t>(option));
  return SplitMix64(h ^ static_cast<std::uint32_t>(trial));
}

Maps MakeMaps(magnetic::MagGridMap magmap, mapping::OccupancyGrid grid) {
  magnetic::FingerprintDatabase training = magnetic::MapNodesAsDatabase(magmap);
  if (training.empty()) {
    throw std::invalid_argument("MakeMaps: magnetic map has no nodes");
  }
  return {std::move(magmap), std::move(training), std::move(grid)};
}

TrialResult RunTrial(const world::World& world, const Maps& maps,
                     const scan_matching::Localizer& localizer,
                     const TrialSpec& spec, const BenchConfig& config,
                     std::ostream* const trace) {
  world::RandomEngine jitter_rng = MakeEngine(spec.seed, kJitter);
  world::RandomEngine mag_rng = MakeEngine(spec.seed, kMagnetometer);
  world::RandomEngine lidar_rng = MakeEngine(spec.seed, kLidar);

  TrialResult result;
  result.spec = spec;
  result.true_pose =
      JitteredStart(world.plan, spec.start_pose, config, &jitter_rng);

  coarse::InitialPose init;
  if (spec.option != InitOption::kNone) {
    const Eigen::Vector3d reading =
        world::SampleMagnetometer(world.config, result.true_pose, &mag_rng);
    coarse::CoarseConfig coarse_config = config.coarse;
    coarse_config.declination = world.config.declination;
    const coarse::CoarsePoseResult coarse = coarse::EstimateCoarsePose(
        maps.training, maps.magmap, reading, coarse_config);
    init.location = coarse.pose.location;
    init.has_location = true;
    if (spec.option == InitOption::kLocationAndHeading) {
      init.heading = coarse.pose.heading;
      init.has_heading = true;
    }
  }

  const int frames =
      static_cast<int>(std::lround(config.stream_duration / config.scan_period));
  int next = 0;
  const scan_matching::ScanStream stream =
      [&]() -> std::optional<scan_matching::ScanFrame> {
    if (next >= frames) return std::nullopt;
    ++next;
    return scan_matching::ScanFrame{
        next * config.scan_period,
        world::RaycastScan(world.plan, result.true_pose, world.config,
                           &lidar_rng),
        transform::Pose2()};
  };
  const scan_matching::LocalizationOutcome outcome =
      localizer.Run(stream, init, trace);

  result.declared = outcome.declared;
  if (outcome.declared) {
    const transform::PoseError error =
        transform::ComputePoseError(outcome.pose, result.true_pose);
    result.time_s = outcome.time_s;
    result.translation_error = error.translation;
    result.heading_error = error.heading;
    result.success = error.translation <=
                     config.success_cells * localizer.grid().resolution();
    result.false_positive = !result.success;
  }
  return result;
}

std::vector<TrialResult> RunBenchmark(const world::World& world,
                                      const Maps& maps,
                                      std::span<const Waypoint> waypoints,
                                      const BenchConfig& config) {
  if (waypoints.empty()) {
    throw std::invalid_argument("RunBenchmark: no waypoints");
  }
  const scan_matching::Localizer localizer(maps.grid, config.matcher);
  std::vector<TrialResult> results;
  for (const Waypoint& waypoint : waypoints) {
    for (const int option : kOptions) {
      for (int trial = 0; trial < config.trials; ++trial) {
        TrialSpec spec;
        spec.waypoint_id = waypoint.id;
        spec.start_pose = waypoint.pose;
        spec.option = static_cast<InitOption>(option);
        spec.trial = trial;
        spec.seed =
            DeriveTrialSeed(config.base_seed, waypoint.id, option, trial);
        results.push_back(RunTrial(world, maps, localizer, spec, config));
      }
    }
  }
  return results;
}

double ComputeRmse(std::span<const double> errors) {
  if (errors.empty()) {
    throw std::invalid_argument("ComputeRmse: empty error list");
  }
  double sum = 0.;
  for (const double e : errors) sum += e * e;
  return std::sqrt(sum / errors.size());
}

BenchmarkReport Summarize(std::span<const TrialResult> results) {
  BenchmarkReport report;
  std::map<std::pair<int, int>, std::pair<std::vector<double>,
                                          std::vector<double>>> cell_samples;
  std::map<int, std::pair<std::vector<double>, std::vector<double>>>
      option_samples;
  for (const TrialResult& result : results) {
    const int id = result.spec.waypoint_id;
    const int option = static_cast<int>(result.spec.option);
    if (std::find(report.waypoint_ids.begin(), report.waypoint_ids.end(),
                  id) == report.waypoint_ids.end()) {
      report.waypoint_ids.push_back(id);
    }
    auto& cell = cell_samples[{id, option}];
    Accumulate(result, &report.per_waypoint[{id, option}], &cell.first,
               &cell.second);
    auto& overall = option_samples[option];
    Accumulate(result, &report.per_option[option], &overall.first,
               &overall.second);
  }
  for (auto& [key, samples] : cell_samples) {
    Finish(samples.first, samples.second, &report.per_waypoint[key]);
  }
  for (auto& [option, samples] : option_samples) {
    Finish(samples.first, samples.second, &report.per_option[option]);
  }
  return report;
}

void WriteResultsCsv(std::span<const TrialResult> results, std::ostream& out) {
  out << "waypoint,option,trial,seed,declared,success,false_positive,time_s,"
         "err_xy_m,err_theta_rad\n";
  for (const TrialResult& r : results) {
    char line[256];
    std::snprintf(line, sizeof(line), "%d,%d,%d,%llu,%d,%d,%d,",
                  r.spec.waypoint_id, static_cast<int>(r.spec.option),
                  r.spec.trial,
                  static_cast<unsigned long long>(r.spec.seed),
                  r.declared ? 1 : 0, r.success ? 1 : 0,
                  r.false_positive ? 1 : 0);
    out << line;
    const auto field = [&](const std::optional<double>& value,
                           const char* format) {
      if (!value) return std::string();
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), format, *value);
      return std::string(buffer);
    };
    out << field(r.time_s, "%.3f") << ',' << field(r.translation_error, "%.6f")
        << ',' << field(r.heading_error, "%.6f") << '\n';
  }
}

void WriteReport(const BenchmarkReport& report, std::ostream& out) {
  char line[256];
  out << "Correct localization time (s) and RMSE (m); F = no successful "
         "trial\n\n";
  std::snprintf(line, sizeof(line), "%-9s %-7s %-9s %-4s %-9s %-9s %-9s %-8s\n",
                "waypoint", "option", "success", "fp", "fastest", "slowest",
                "average", "rmse");
  out << line;
  for (const int id : report.waypoint_ids) {
    for (const int option : kOptions) {
      const auto it = report.per_waypoint.find({id, option});
      if (it == report.per_waypoint.end()) continue;
      const OptionSummary& s = it->second;
      const std::string rate =
          std::to_string(s.successes) + "/" + std::to_string(s.trials);
      std::snprintf(line, sizeof(line),
                    "%-9d %-7d %-9s %-4d %-9s %-9s %-9s %-8s\n", id, option,
                    rate.c_str(), s.false_positives,
                    Cell(s.fastest_s, "%.2f").c_str(),
                    Cell(s.slowest_s, "%.2f").c_str(),
                    Cell(s.mean_time_s, "%.2f").c_str(),
                    Cell(s.rmse_m, "%.3f").c_str());
      out << line;
    }
  }
  out << "\nPer option over all waypoints\n";
  for (const auto& [option, s] : report.per_option) {
    std::snprintf(line, sizeof(line),
                  "option %d: success %d/%d (%.1f%%), false positives %d, "
                  "mean time %s s, rmse %s m\n",
                  option, s.successes, s.trials, 100. * s.success_rate(),
                  s.false_positives, Cell(s.mean_time_s, "%.2f").c_str(),
                  Cell(s.rmse_m, "%.3f").c_str());
    out << line;
  }
}

}  // namespace bench
}  // namespace magloc
