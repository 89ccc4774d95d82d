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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "magloc/world/floor_plan.h"
#include "magloc/world/route.h"
#include "magloc/world/sensors.h"
#include "magloc/world/world_config.h"
#include "magloc/world/world_io.h"
#include "test_worlds.h"

namespace magloc {
namespace world {
namespace {

constexpr double kPi = std::numbers::pi;

WorldConfig NoiselessConfig(const Eigen::Vector3d& ambient) {
  WorldConfig config;
  config.ambient_field = ambient;
  config.mag_noise_sigma = 0.;
  config.lidar_range_sigma = 0.;
  return config;
}

TEST(FieldAtTest, AmbientOnlyWithoutDipoles) {
  const WorldConfig config = NoiselessConfig({40., 0., -30.});
  EXPECT_EQ(FieldAt(config, {1., 2., 0.3}), Eigen::Vector3d(40., 0., -30.));
  EXPECT_EQ(FieldAt(config, {-7., 9., 5.}), Eigen::Vector3d(40., 0., -30.));
}

TEST(FieldAtTest, InverseCubeAlongMomentAxis) {
  WorldConfig config = NoiselessConfig({40., 0., -30.});
  config.dipoles.push_back({{0., 0., 0.}, {0., 0., 10.}});
  const Eigen::Vector3d near = FieldAt(config, {0., 0., 1.}) - config.ambient_field;
  const Eigen::Vector3d far = FieldAt(config, {0., 0., 2.}) - config.ambient_field;
  EXPECT_NEAR(far.norm(), near.norm() / 8., 1e-12 * near.norm());
  // On the axis the field is 2 * (mu0 / 4 pi) * m / r^3 = 2 uT here.
  EXPECT_NEAR(near.z(), 2., 1e-12);
}

TEST(FieldAtTest, SuperposesDipoles) {
  WorldConfig config = NoiselessConfig({0., 40., -30.});
  const DipoleSource a{{1., 2., -0.5}, {3., -4., 12.}};
  const DipoleSource b{{-2., 0.5, -1.}, {-20., 5., 1.}};
  config.dipoles = {a, b};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-5., 5.);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d p(coord(rng), coord(rng), 0.3);
    const Eigen::Vector3d expected =
        config.ambient_field + DipoleField(a, p) + DipoleField(b, p);
    const Eigen::Vector3d actual = FieldAt(config, p);
    EXPECT_LE((actual - expected).norm(), 1e-12 * expected.norm());
  }
}

TEST(FieldAtTest, DipoleFieldMatchesClosedForm) {
  const DipoleSource dipole{{0.5, -1., -0.4}, {7., -2., 3.}};
  const Eigen::Vector3d p(2., 1.5, 0.3);
  const Eigen::Vector3d r = p - dipole.position;
  const double d = r.norm();
  const Eigen::Vector3d n = r / d;
  const Eigen::Vector3d expected =
      1e-7 * 1e6 * (3. * dipole.moment.dot(n) * n - dipole.moment) /
      (d * d * d);
  EXPECT_LE((DipoleField(dipole, p) - expected).norm(),
            1e-12 * expected.norm());
}

TEST(FieldAtTest, SingularAtDipole) {
  WorldConfig config = NoiselessConfig({0., 40., -30.});
  config.dipoles.push_back({{1., 1., 0.}, {1., 0., 0.}});
  EXPECT_THROW(FieldAt(config, {1., 1., 0.}), std::domain_error);
}

TEST(WorldConfigTest, RejectsInvalidValues) {
  WorldConfig config;
  config.ambient_field = Eigen::Vector3d::Zero();
  EXPECT_THROW(config.Validate(), std::invalid_argument);
  config = WorldConfig();
  config.lidar_beam_count = 1;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
  config = WorldConfig();
  config.mag_noise_sigma = -1.;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
  config = WorldConfig();
  config.dipoles.push_back({{0., 0., 0.}, {0., 0., 0.}});
  EXPECT_THROW(config.Validate(), std::invalid_argument);
}

TEST(SampleMagnetometerTest, HeadingZeroIsGlobalField) {
  const WorldConfig config = NoiselessConfig({40., 0., -30.});
  RandomEngine rng(1);
  EXPECT_EQ(SampleMagnetometer(config, transform::Pose2(2., 3., 0.), &rng),
            Eigen::Vector3d(40., 0., -30.));
}

TEST(SampleMagnetometerTest, HalfTurnNegatesPlanarComponents) {
  const WorldConfig config = NoiselessConfig({40., 0., -30.});
  RandomEngine rng(1);
  const Eigen::Vector3d b =
      SampleMagnetometer(config, transform::Pose2(0., 0., kPi), &rng);
  EXPECT_NEAR(b.x(), -40., 1e-12);
  EXPECT_NEAR(b.y(), 0., 1e-12);
  EXPECT_EQ(b.z(), -30.);
}

TEST(SampleMagnetometerTest, QuarterTurnMatchesRotationMatrix) {
  const WorldConfig config = NoiselessConfig({1., 0., 0.});
  RandomEngine rng(1);
  const Eigen::Vector3d b =
      SampleMagnetometer(config, transform::Pose2(0., 0., kPi / 2.), &rng);
  // R(-pi/2) = [[0, 1], [-1, 0]] applied to (1, 0).
  Eigen::Matrix2d rotation;
  rotation << std::cos(-kPi / 2.), -std::sin(-kPi / 2.), std::sin(-kPi / 2.),
      std::cos(-kPi / 2.);
  const Eigen::Vector2d expected = rotation * Eigen::Vector2d(1., 0.);
  EXPECT_NEAR(b.x(), expected.x(), 1e-15);
  EXPECT_NEAR(b.y(), expected.y(), 1e-15);
  EXPECT_EQ(b.z(), 0.);
}

TEST(SampleMagnetometerTest, RotationPreservesNorm) {
  const World& world = testing::DefaultWorld();
  WorldConfig config = world.config;
  config.mag_noise_sigma = 0.;
  RandomEngine rng(5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 50; ++i) {
    const transform::Pose2 pose(1. + 0.3 * i, 1., angle(rng));
    const Eigen::Vector3d global =
        FieldAt(config, {pose.x, pose.y, config.sensor_height});
    const Eigen::Vector3d body = SampleMagnetometer(config, pose, &rng);
    EXPECT_NEAR(body.norm(), global.norm(), 1e-12 * global.norm());
  }
}

TEST(SampleMagnetometerTest, SameSeedSameStream) {
  const WorldConfig config = testing::DefaultWorld().config;
  RandomEngine a(99);
  RandomEngine b(99);
  for (int i = 0; i < 20; ++i) {
    const transform::Pose2 pose(1. + 0.5 * i, 1., 0.);
    EXPECT_EQ(SampleMagnetometer(config, pose, &a),
              SampleMagnetometer(config, pose, &b));
  }
}

TEST(RaycastScanTest, EmptyPlanHasNoReturns) {
  const FloorPlan plan(Box{{-10., -10.}, {10., 10.}}, {});
  WorldConfig config = NoiselessConfig({0., 40., -30.});
  config.lidar_beam_count = 31;
  RandomEngine rng(1);
  const sensor::LaserScan scan =
      RaycastScan(plan, transform::Pose2(0., 0., 0.), config, &rng);
  ASSERT_EQ(scan.size(), 31u);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    EXPECT_TRUE(scan.no_return[i]);
    EXPECT_EQ(scan.ranges[i], config.lidar_max_range);
  }
}

TEST(RaycastScanTest, PerpendicularWall) {
  const FloorPlan plan(Box{{-10., -10.}, {10., 10.}},
                       {{{3., -5.}, {3., 5.}}});
  WorldConfig config = NoiselessConfig({0., 40., -30.});
  config.lidar_beam_count = 3;
  config.lidar_fov = kPi;
  RandomEngine rng(1);
  const sensor::LaserScan scan =
      RaycastScan(plan, transform::Pose2(0., 0., 0.), config, &rng);
  ASSERT_EQ(scan.size(), 3u);
  EXPECT_EQ(scan.angles[1], 0.);
  EXPECT_NEAR(scan.ranges[1], 3., 1e-12);
  EXPECT_FALSE(scan.no_return[1]);
}

double Orientation(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                   const Eigen::Vector2d& c) {
  return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
}

// First 1 mm step along the beam whose step segment crosses a wall.
double MarchingRange(const FloorPlan& plan, const Eigen::Vector2d& origin,
                     const Eigen::Vector2d& direction, double max_range) {
  constexpr double kStep = 1e-3;
  Eigen::Vector2d previous = origin;
  for (double t = kStep; t <= max_range; t += kStep) {
    const Eigen::Vector2d current = origin + t * direction;
    for (const Segment& s : plan.segments()) {
      const bool straddles_wall =
          Orientation(s.a, s.b, previous) * Orientation(s.a, s.b, current) <= 0.;
      const bool straddles_step =
          Orientation(previous, current, s.a) *
              Orientation(previous, current, s.b) <= 0.;
      if (straddles_wall && straddles_step) return t;
    }
    previous = current;
  }
  return max_range;
}

TEST(RaycastScanTest, MatchesMarchingOracle) {
  const World& world = testing::DefaultWorld();
  WorldConfig config = world.config;
  config.lidar_range_sigma = 0.;
  config.lidar_beam_count = 37;
  RandomEngine rng(17);
  std::uniform_real_distribution<double> u(0., 1.);
  int checked = 0;
  while (checked < 5) {
    const transform::Pose2 pose(20. * u(rng), 8. * u(rng), 2. * kPi * u(rng));
    if (!world.plan.IsFree(pose.translation(), 0.2)) continue;
    ++checked;
    const sensor::LaserScan scan = RaycastScan(world.plan, pose, config, &rng);
    for (std::size_t i = 0; i < scan.size(); ++i) {
      const double angle = pose.heading + scan.angles[i];
      const double oracle = MarchingRange(
          world.plan, pose.translation(), {std::cos(angle), std::sin(angle)},
          config.lidar_max_range);
      EXPECT_NEAR(scan.ranges[i], oracle, 2e-3) << "beam " << i;
    }
  }
}

TEST(RaycastScanTest, RangesStayWithinLimits) {
  const World& world = testing::DefaultWorld();
  WorldConfig config = world.config;
  config.lidar_range_sigma = 0.5;
  RandomEngine rng(4);
  const sensor::LaserScan scan =
      RaycastScan(world.plan, transform::Pose2(1., 1., 0.), config, &rng);
  for (const double range : scan.ranges) {
    EXPECT_GE(range, 0.);
    EXPECT_LE(range, config.lidar_max_range);
  }
}

TEST(RaycastScanTest, SameSeedSameScan) {
  const World& world = testing::DefaultWorld();
  RandomEngine a(8);
  RandomEngine b(8);
  const transform::Pose2 pose(5., 1., 0.3);
  EXPECT_EQ(RaycastScan(world.plan, pose, world.config, &a).ranges,
            RaycastScan(world.plan, pose, world.config, &b).ranges);
}

TEST(FloorPlanTest, FreeSpaceExcludesBlocksAndWalls) {
  const FloorPlan& plan = testing::DefaultWorld().plan;
  EXPECT_TRUE(plan.IsFree({1., 1.}));
  EXPECT_FALSE(plan.IsFree({10., 4.}));   // inner block
  EXPECT_FALSE(plan.IsFree({-1., 1.}));   // outside bounds
  EXPECT_FALSE(plan.IsFree({1., 0.01}));  // against the outer wall
  EXPECT_TRUE(plan.IsSegmentFree({1., 1.}, {17., 1.}));
  EXPECT_FALSE(plan.IsSegmentFree({1., 1.}, {10., 7.}));
}

TEST(FloorPlanTest, RejectsWallsOutsideBounds) {
  EXPECT_THROW(FloorPlan(Box{{0., 0.}, {1., 1.}}, {{{0., 0.}, {2., 0.}}}),
               std::invalid_argument);
  EXPECT_THROW(FloorPlan(Box{{0., 0.}, {1., 1.}}, {{{0.5, 0.5}, {0.5, 0.5}}}),
               std::invalid_argument);
}

TEST(DriveRouteTest, StraightLegAtIntegerSeconds) {
  const FloorPlan plan(Box{{-1., -1.}, {11., 1.}}, {});
  const std::vector<transform::Pose2> waypoints = {{0., 0., 0.},
                                                   {10., 0., 0.}};
  const std::vector<GroundTruthState> states =
      DriveRoute(plan, waypoints, 1., 1.);
  ASSERT_EQ(states.size(), 11u);
  for (int i = 0; i < 11; ++i) {
    EXPECT_NEAR(states[i].time, i, 1e-12);
    EXPECT_NEAR(states[i].pose.x, i, 1e-12);
    EXPECT_EQ(states[i].pose.heading, 0.);
  }
}

TEST(DriveRouteTest, SingleWaypoint) {
  const FloorPlan plan(Box{{-1., -1.}, {1., 1.}}, {});
  const std::vector<transform::Pose2> waypoints = {{0.2, 0.3, 0.5}};
  const std::vector<GroundTruthState> states =
      DriveRoute(plan, waypoints, 1., 0.1);
  ASSERT_EQ(states.size(), 1u);
  EXPECT_EQ(states[0].time, 0.);
  EXPECT_EQ(states[0].pose.x, 0.2);
}

TEST(DriveRouteTest, DurationMatchesPerimeter) {
  const World& world = testing::DefaultWorld();
  const Route& route = testing::DefaultRoutes().routes.front();
  const std::vector<GroundTruthState> states =
      DriveRoute(world.plan, route.waypoints, 0.5, 0.1);
  double length = 0.;
  for (std::size_t i = 1; i < states.size(); ++i) {
    length += (states[i].pose.translation() - states[i - 1].pose.translation())
                  .norm();
    EXPECT_GT(states[i].time, states[i - 1].time);
  }
  double perimeter = 0.;
  for (std::size_t i = 1; i < route.waypoints.size(); ++i) {
    perimeter += (route.waypoints[i].translation() -
                  route.waypoints[i - 1].translation())
                     .norm();
  }
  // Samples cut the corners, so the chord sum only bounds the path length.
  EXPECT_LE(length, perimeter);
  EXPECT_GT(length, perimeter - 0.1 * route.waypoints.size());
  EXPECT_NEAR(states.back().time * 0.5, perimeter, 1e-9);
  EXPECT_LE((states.back().pose.translation() -
             route.waypoints.back().translation())
                .norm(),
            1e-9);
}

TEST(DriveRouteTest, HeadingsAreWallParallel) {
  const World& world = testing::DefaultWorld();
  for (const Route& route : testing::DefaultRoutes().routes) {
    for (const GroundTruthState& state :
         DriveRoute(world.plan, route.waypoints, 0.5, 0.1)) {
      const double quarter = state.pose.heading / (kPi / 2.);
      EXPECT_NEAR(quarter, std::round(quarter), 1e-12);
    }
  }
}

TEST(DriveRouteTest, RejectsWaypointInsideBlock) {
  const FloorPlan& plan = testing::DefaultWorld().plan;
  const std::vector<transform::Pose2> waypoints = {
      {1., 1., 0.}, {5., 1., 0.}, {5., 4., 0.}};
  try {
    DriveRoute(plan, waypoints, 0.5, 0.1);
    FAIL() << "expected RouteError";
  } catch (const RouteError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(SnapToWallParallelTest, SnapsToNearestQuarter) {
  EXPECT_EQ(SnapToWallParallel(0.1), 0.);
  EXPECT_NEAR(SnapToWallParallel(1.4), kPi / 2., 1e-15);
  EXPECT_NEAR(SnapToWallParallel(-1.7), -kPi / 2., 1e-15);
  EXPECT_NEAR(std::abs(SnapToWallParallel(3.)), kPi, 1e-15);
}

TEST(WorldIoTest, ParsesDirectives) {
  std::istringstream in(
      "# comment\n"
      "origin 0 0\nsize 10 4\n"
      "segment 0 0 10 0  # trailing comment\n"
      "block 2 1 8 3\n"
      "dipole 1 1 -1 0 0 5\n"
      "ambient_field 1 2 3\nmag_noise_sigma 0.2\nlidar_beam_count 11\n");
  const World world = ParseWorld(in, "test");
  EXPECT_EQ(world.plan.segments().size(), 5u);
  EXPECT_EQ(world.plan.blocks().size(), 1u);
  ASSERT_EQ(world.config.dipoles.size(), 1u);
  EXPECT_EQ(world.config.dipoles[0].moment, Eigen::Vector3d(0., 0., 5.));
  EXPECT_EQ(world.config.ambient_field, Eigen::Vector3d(1., 2., 3.));
  EXPECT_EQ(world.config.lidar_beam_count, 11);
}

TEST(WorldIoTest, ReportsLineOfBadDirective) {
  std::istringstream in("size 10 4\nsegment 0 0 1\n");
  try {
    ParseWorld(in, "bad.world");
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("bad.world:2"), std::string::npos)
        << e.what();
  }
  std::istringstream unknown("size 10 4\nwall 0 0 1 1\n");
  EXPECT_THROW(ParseWorld(unknown), std::runtime_error);
  std::istringstream missing_size("segment 0 0 1 1\n");
  EXPECT_THROW(ParseWorld(missing_size), std::runtime_error);
}

TEST(WorldIoTest, ParsesRoutes) {
  std::istringstream in(
      "speed 1.5\nsample_dt 0.2\nroute a\nwaypoint 0 0\nwaypoint 1 0\n"
      "route b\nwaypoint 2 2\n");
  const RouteSet routes = ParseRoutes(in);
  EXPECT_EQ(routes.speed, 1.5);
  EXPECT_EQ(routes.sample_dt, 0.2);
  ASSERT_EQ(routes.routes.size(), 2u);
  EXPECT_EQ(routes.routes[0].name, "a");
  EXPECT_EQ(routes.routes[0].waypoints.size(), 2u);
  std::istringstream orphan("waypoint 0 0\n");
  EXPECT_THROW(ParseRoutes(orphan), std::runtime_error);
}

TEST(WorldIoTest, DefaultRoutesAre38CentimetersApart) {
  const RouteSet& routes = testing::DefaultRoutes();
  ASSERT_EQ(routes.routes.size(), 6u);
  std::vector<double> offsets;
  for (const Route& route : routes.routes) {
    offsets.push_back(route.waypoints.front().x);
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  ASSERT_EQ(offsets.size(), 3u);
  EXPECT_NEAR(offsets[1] - offsets[0], 0.38, 1e-12);
  EXPECT_NEAR(offsets[2] - offsets[1], 0.38, 1e-12);
}

}  // namespace
}  // namespace world
}  // namespace magloc
