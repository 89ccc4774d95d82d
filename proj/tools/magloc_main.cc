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

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "magloc/bench/benchmark.h"
#include "magloc/bench/commands.h"
#include "magloc/mapping/map_io.h"
#include "magloc/world/route.h"
#include "magloc/world/world_io.h"

namespace {

namespace fs = std::filesystem;
using namespace magloc;

struct Options {
  std::string world;
  std::string routes;
  std::string magmap;
  std::string gridmap;
  std::string waypoints;
  std::string out = ".";
  int option = 1;
  int trials = 10;
  std::uint64_t seed = 1;
  std::vector<double> start;
  bool verbose = false;
};

fs::path OutputDir(const Options& options) {
  const fs::path dir(options.out);
  fs::create_directories(dir);
  return dir;
}

int BuildMagmap(const Options& options) {
  const world::World world = world::LoadWorld(options.world);
  const world::RouteSet routes = world::LoadRoutes(options.routes);
  const bench::MagneticSurvey survey = bench::BuildMagneticMap(
      world, routes, magnetic::GridMapOptions(), options.seed);
  const fs::path dir = OutputDir(options);
  bench::SaveMagGridMap(survey.map, (dir / "magmap.txt").string());
  bench::SaveFingerprints(survey.fingerprints,
                          (dir / "fingerprints.csv").string());
  const int total = survey.map.nx() * survey.map.ny();
  std::printf("fingerprints: %zu\nnodes: %d x %d\npresent: %d (%.1f%%)\n",
              survey.fingerprints.size(), survey.map.nx(), survey.map.ny(),
              survey.map.CountPresent(), 100. * survey.map.CountPresent() / total);
  std::printf("wrote %s\n", (dir / "magmap.txt").string().c_str());
  return 0;
}

int BuildGridmap(const Options& options) {
  const world::World world = world::LoadWorld(options.world);
  const world::RouteSet routes = world::LoadRoutes(options.routes);
  const mapping::OccupancyGrid grid = bench::BuildOccupancyMap(
      world, routes, bench::GridMapConfig(), options.seed);
  const fs::path dir = OutputDir(options);
  const std::string stem = (dir / "gridmap").string();
  mapping::WriteOccupancyGrid(grid, stem);
  int occupied = 0, free = 0;
  for (const double p : grid.cells()) {
    occupied += p >= mapping::kOccupiedThreshold;
    free += p <= mapping::kFreeThreshold;
  }
  std::printf("cells: %d x %d at %g m\norigin: %g %g\noccupied: %d\nfree: %d\n",
              grid.nx(), grid.ny(), grid.resolution(), grid.origin().x(),
              grid.origin().y(), occupied, free);
  std::printf("wrote %s.pgm\n", stem.c_str());
  return 0;
}

bench::Maps LoadMaps(const Options& options) {
  return bench::MakeMaps(
      bench::LoadMagGridMap(options.magmap),
      mapping::ReadOccupancyGrid(bench::GridMapStem(options.gridmap)));
}

void CheckMapsCoverWorld(const world::World& world, const bench::Maps& maps) {
  const world::Box& bounds = world.plan.bounds();
  const mapping::OccupancyGrid& grid = maps.grid;
  const Eigen::Vector2d grid_max =
      grid.origin() + grid.resolution() * Eigen::Vector2d(grid.nx(), grid.ny());
  if ((grid.origin().array() > bounds.max.array()).any() ||
      (grid_max.array() < bounds.min.array()).any()) {
    throw std::runtime_error("grid map does not overlap the world bounds");
  }
}

int Localize(const Options& options) {
  const world::World world = world::LoadWorld(options.world);
  const bench::Maps maps = LoadMaps(options);
  CheckMapsCoverWorld(world, maps);
  if (options.start.size() != 3) {
    throw std::runtime_error("--start needs X Y HEADING_DEG");
  }
  bench::BenchConfig config;
  bench::TrialSpec spec;
  spec.start_pose = transform::Pose2(options.start[0], options.start[1],
                                     options.start[2] * std::numbers::pi / 180.);
  spec.option = static_cast<bench::InitOption>(options.option);
  spec.seed = options.seed;
  const scan_matching::Localizer localizer(maps.grid, config.matcher);

  std::ofstream trace_file;
  if (options.verbose) {
    const fs::path path = OutputDir(options) / "trace.csv";
    trace_file.open(path);
    if (!trace_file) {
      throw std::runtime_error("cannot write '" + path.string() + "'");
    }
  }
  const bench::TrialResult result =
      bench::RunTrial(world, maps, localizer, spec, config,
                      options.verbose ? &trace_file : nullptr);
  std::printf("option: %d\ntrue pose: %s\n", options.option,
              result.true_pose.DebugString().c_str());
  if (!result.declared) {
    std::printf("outcome: F (not localized within the stream)\n");
    return 0;
  }
  std::printf("outcome: %s\ntime_s: %.3f\nerr_xy_m: %.6f\nerr_theta_rad: %.6f\n",
              result.success ? "success" : "false positive", *result.time_s,
              *result.translation_error, *result.heading_error);
  return 0;
}

int Bench(const Options& options) {
  const world::World world = world::LoadWorld(options.world);
  const bench::Maps maps = LoadMaps(options);
  CheckMapsCoverWorld(world, maps);
  const std::vector<bench::Waypoint> waypoints =
      bench::LoadWaypoints(options.waypoints);
  bench::BenchConfig config;
  config.trials = options.trials;
  config.base_seed = options.seed;
  const std::vector<bench::TrialResult> results =
      bench::RunBenchmark(world, maps, waypoints, config);

  const fs::path dir = OutputDir(options);
  std::ofstream csv(dir / "results.csv");
  bench::WriteResultsCsv(results, csv);
  std::ofstream report_file(dir / "report.txt");
  const bench::BenchmarkReport report = bench::Summarize(results);
  bench::WriteReport(report, report_file);
  if (!csv || !report_file) {
    throw std::runtime_error("writing results to '" + dir.string() + "' failed");
  }
  if (options.verbose) bench::WriteReport(report, std::cout);
  std::printf("trials: %zu\nwrote %s and %s\n", results.size(),
              (dir / "results.csv").string().c_str(),
              (dir / "report.txt").string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetic-field and lidar localization tools"};
  app.require_subcommand(1);
  Options options;

  const auto add_out = [&](CLI::App* command) {
    command->add_option("--out", options.out, "Output directory");
    command->add_option("--seed", options.seed, "Random seed");
    command->add_flag("--verbose", options.verbose, "Extra output");
  };

  CLI::App* magmap = app.add_subcommand("build-magmap", "Survey the field map");
  magmap->add_option("--world", options.world)->required()->check(CLI::ExistingFile);
  magmap->add_option("--routes", options.routes)->required()->check(CLI::ExistingFile);
  add_out(magmap);

  CLI::App* gridmap =
      app.add_subcommand("build-gridmap", "Build the occupancy grid map");
  gridmap->add_option("--world", options.world)->required()->check(CLI::ExistingFile);
  gridmap->add_option("--routes", options.routes)->required()->check(CLI::ExistingFile);
  add_out(gridmap);

  CLI::App* localize = app.add_subcommand("localize", "Run a single trial");
  localize->add_option("--world", options.world)->required()->check(CLI::ExistingFile);
  localize->add_option("--magmap", options.magmap)->required();
  localize->add_option("--gridmap", options.gridmap)->required();
  localize->add_option("--start", options.start, "X Y HEADING_DEG")
      ->required()
      ->expected(3);
  localize->add_option("--option", options.option)->check(CLI::Range(1, 3));
  add_out(localize);

  CLI::App* bench = app.add_subcommand("bench", "Run the waypoint benchmark");
  bench->add_option("--world", options.world)->required()->check(CLI::ExistingFile);
  bench->add_option("--magmap", options.magmap)->required();
  bench->add_option("--gridmap", options.gridmap)->required();
  bench->add_option("--waypoints", options.waypoints)->required()->check(CLI::ExistingFile);
  bench->add_option("--trials", options.trials)->check(CLI::PositiveNumber);
  add_out(bench);

  CLI11_PARSE(app, argc, argv);
  try {
    if (magmap->parsed()) return BuildMagmap(options);
    if (gridmap->parsed()) return BuildGridmap(options);
    if (localize->parsed()) return Localize(options);
    return Bench(options);
  } catch (const world::RouteError& e) {
    std::fprintf(stderr, "error: route waypoint %zu: %s\n", e.index(), e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return 1;
}
