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

#include "magloc/scan_matching/localizer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "magloc/mapping/map_io.h"

namespace magloc {
namespace scan_matching {
namespace {

// Distinct tracked hypotheses are at least this far apart.
constexpr double kDistinctTranslation = 0.25;
constexpr double kDistinctHeading = 0.1;

std::vector<double> Offsets(double half_width, double step) {
  std::vector<double> offsets = {0.};
  if (half_width <= 0. || step <= 0.) return offsets;
  const int n = static_cast<int>(std::floor(half_width / step + 1e-9));
  for (int i = 1; i <= n; ++i) {
    offsets.push_back(-i * step);
    offsets.push_back(i * step);
  }
  std::sort(offsets.begin(), offsets.end());
  return offsets;
}

struct Hypothesis {
  transform::Pose2 pose;
  double score = 0.;
};

void WriteTrace(std::ostream* trace, int scan, int hypothesis, int level,
                const std::vector<IterationTrace>& iterations) {
  for (const IterationTrace& it : iterations) {
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%d,%d,%d,%.9g,%.9g,%.9g,%.9g\n",
                  scan, hypothesis, level, it.iteration, it.pose.x, it.pose.y,
                  it.pose.heading, it.cost);
    *trace << line;
  }
}

// Refines from the coarsest pyramid level down to the full-resolution map.
MatchResult RefineAcross(const std::vector<mapping::OccupancyGrid>& pyramid,
                         std::span<const Eigen::Vector2d> endpoints,
                         const transform::Pose2& seed,
                         const MatcherConfig& config, std::ostream* trace,
                         int scan, int hypothesis) {
  transform::Pose2 pose = seed;
  MatchResult result;
  std::vector<IterationTrace> iterations;
  for (int level = static_cast<int>(pyramid.size()) - 1; level >= 0;
       --level) {
    iterations.clear();
    result = OptimizePose(pyramid[level], endpoints, pose, config,
                          trace != nullptr ? &iterations : nullptr);
    if (trace != nullptr) {
      WriteTrace(trace, scan, hypothesis, level, iterations);
    }
    pose = result.pose;
  }
  return result;
}

}  // namespace

std::vector<transform::Pose2> GenerateHypotheses(
    const mapping::OccupancyGrid& grid, const coarse::InitialPose& init,
    const MatcherConfig& config) {
  std::vector<transform::Pose2> seeds;
  if (init.has_location) {
    const double heading = init.has_heading ? init.heading : 0.;
    for (const double dx : Offsets(config.search_window.x(),
                                   config.search_step_translation)) {
      for (const double dy : Offsets(config.search_window.y(),
                                     config.search_step_translation)) {
        for (const double dh : Offsets(config.search_window.z(),
                                       config.search_step_rotation)) {
          seeds.emplace_back(init.location.x() + dx, init.location.y() + dy,
                             heading + dh);
        }
      }
    }
    // Closest to the coarse estimate first.
    std::stable_sort(seeds.begin(), seeds.end(),
                     [&](const transform::Pose2& a, const transform::Pose2& b) {
                       return (a.translation() - init.location).squaredNorm() <
                              (b.translation() - init.location).squaredNorm();
                     });
    return seeds;
  }

  const double step = config.global_step_translation;
  const double min_x = std::ceil(grid.origin().x() / step) * step;
  const double min_y = std::ceil(grid.origin().y() / step) * step;
  const double max_x = grid.origin().x() + grid.nx() * grid.resolution();
  const double max_y = grid.origin().y() + grid.ny() * grid.resolution();
  const int headings = std::max(
      1, static_cast<int>(std::lround(2. * std::numbers::pi / config.global_step_rotation)));
  for (double y = min_y; y < max_y; y += step) {
    for (double x = min_x; x < max_x; x += step) {
      const Eigen::Vector2d location(x, y);
      if (grid.probability(grid.CellIndex(location)) >
          mapping::kFreeThreshold) {
        continue;
      }
      for (int h = 0; h < headings; ++h) {
        seeds.emplace_back(location, h * config.global_step_rotation);
      }
    }
  }
  return seeds;
}

Localizer::Localizer(const mapping::OccupancyGrid& grid,
                     const MatcherConfig& config)
    : config_(config) {
  if (config.pyramid_levels < 0 || config.refinements_per_scan < 1 ||
      config.tracked_hypotheses < 1 || config.consecutive_scans < 1 ||
      !(config.translation_tolerance > 0.) ||
      !(config.rotation_tolerance > 0.) || !(config.success_score > 0.) ||
      !(config.success_score < 1.)) {
    throw std::invalid_argument("Localizer: invalid matcher configuration");
  }
  pyramid_.push_back(grid);
  for (int level = 1; level <= config.pyramid_levels; ++level) {
    pyramid_.push_back(mapping::Downsample(grid, level));
  }
}

MatchResult Localizer::Refine(std::span<const Eigen::Vector2d> endpoints,
                              const transform::Pose2& seed) const {
  return RefineAcross(pyramid_, endpoints, seed, config_, nullptr, 0, 0);
}

LocalizationOutcome Localizer::Run(const ScanStream& stream,
                                   const coarse::InitialPose& init,
                                   std::ostream* const trace) const {
  if (trace != nullptr) *trace << "scan,hypothesis,level,iteration,x,y,heading,cost\n";
  const std::vector<transform::Pose2> seeds =
      GenerateHypotheses(grid(), init, config_);
  std::deque<std::size_t> pending;
  for (std::size_t i = 0; i < seeds.size(); ++i) pending.push_back(i);
  std::vector<Hypothesis> refined;
  std::vector<Hypothesis> tracked;
  bool search_done = seeds.empty();

  LocalizationOutcome outcome;
  int streak = 0;
  while (std::optional<ScanFrame> frame = stream()) {
    const int scan_index = outcome.scans_processed++;
    const std::vector<Eigen::Vector2d> endpoints =
        sensor::ScanEndpoints(frame->scan);
    for (Hypothesis& h : refined) h.pose = transform::Compose(h.pose, frame->odometry);
    for (Hypothesis& h : tracked) h.pose = transform::Compose(h.pose, frame->odometry);
    if (endpoints.empty()) {
      streak = 0;
      continue;
    }

    const auto refine = [&](const transform::Pose2& seed, int id) {
      ++outcome.refinements;
      return RefineAcross(pyramid_, endpoints, seed, config_, trace,
                          scan_index, id);
    };

    bool have_best = false;
    if (!search_done) {
      for (int n = 0; n < config_.refinements_per_scan && !pending.empty();
           ++n) {
        const std::size_t id = pending.front();
        pending.pop_front();
        const MatchResult result = refine(seeds[id], static_cast<int>(id));
        refined.push_back({result.pose, result.score});
      }
      if (pending.empty()) {
        search_done = true;
        std::stable_sort(refined.begin(), refined.end(),
                         [](const Hypothesis& a, const Hypothesis& b) {
                           return a.score > b.score;
                         });
        for (const Hypothesis& h : refined) {
          if (static_cast<int>(tracked.size()) >= config_.tracked_hypotheses) {
            break;
          }
          const bool distinct = std::none_of(
              tracked.begin(), tracked.end(), [&](const Hypothesis& t) {
                const transform::PoseError e =
                    transform::ComputePoseError(h.pose, t.pose);
                return e.translation < kDistinctTranslation &&
                       std::abs(e.heading) < kDistinctHeading;
              });
          if (distinct) tracked.push_back(h);
        }
        refined.clear();
        have_best = !tracked.empty();
      }
    } else {
      for (std::size_t i = 0; i < tracked.size(); ++i) {
        ++outcome.refinements;
        std::vector<IterationTrace> iterations;
        const MatchResult result =
            OptimizePose(pyramid_.front(), endpoints, tracked[i].pose, config_,
                         trace != nullptr ? &iterations : nullptr);
        if (trace != nullptr) {
          WriteTrace(trace, scan_index, static_cast<int>(i), 0, iterations);
        }
        tracked[i] = {result.pose, result.score};
      }
      std::stable_sort(tracked.begin(), tracked.end(),
                       [](const Hypothesis& a, const Hypothesis& b) {
                         return a.score > b.score;
                       });
      have_best = !tracked.empty();
    }

    if (!have_best) continue;
    outcome.pose = tracked.front().pose;
    outcome.score = tracked.front().score;
    streak = outcome.score >= config_.success_score ? streak + 1 : 0;
    if (streak >= config_.consecutive_scans) {
      outcome.declared = true;
      outcome.time_s = frame->time;
      break;
    }
  }
  return outcome;
}

LocalizationOutcome Localize(const mapping::OccupancyGrid& grid,
                             const ScanStream& stream,
                             const coarse::InitialPose& init,
                             const MatcherConfig& config) {
  return Localizer(grid, config).Run(stream, init);
}

}  // namespace scan_matching
}  // namespace magloc
