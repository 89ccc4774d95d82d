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
#include <vector>

#include "gtest/gtest.h"
#include "magloc/coarse/coarse_localizer.h"
#include "magloc/transform/pose2.h"
#include "magloc/world/sensors.h"
#include "test_worlds.h"

namespace magloc {
namespace coarse {
namespace {

constexpr double kPi = std::numbers::pi;

magnetic::FingerprintDatabase RandomDatabase(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0., 20.);
  std::uniform_real_distribution<double> field(-60., 60.);
  magnetic::FingerprintDatabase db;
  for (int i = 0; i < n; ++i) {
    db.entries.push_back({{coord(rng), coord(rng)},
                          {field(rng), field(rng), field(rng)}});
  }
  return db;
}

TEST(MagDistanceTest, Examples) {
  EXPECT_EQ(MagDistance({1., 2., 3.}, {1., 2., 3.}), 0.);
  EXPECT_DOUBLE_EQ(MagDistance({0., 0., 0.}, {3., 4., 0.}), 5.);
  EXPECT_DOUBLE_EQ(MagDistance({1., 1., 1.}, {1., 1., -1.}), 2.);
}

TEST(MagDistanceTest, IsAMetric) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-50., 50.);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Vector3d a(u(rng), u(rng), u(rng));
    const Eigen::Vector3d b(u(rng), u(rng), u(rng));
    const Eigen::Vector3d c(u(rng), u(rng), u(rng));
    EXPECT_EQ(MagDistance(a, b), MagDistance(b, a));
    EXPECT_LE(MagDistance(a, c), MagDistance(a, b) + MagDistance(b, c) + 1e-12);
  }
}

TEST(KnnLocateTest, ExactMatchWithOneNeighbor) {
  magnetic::FingerprintDatabase db;
  db.entries = {{{0., 0.}, {10., 0., 0.}},
                {{5., 5.}, {20., 0., 0.}},
                {{9., 1.}, {30., 0., 0.}}};
  CoarseConfig config;
  config.k = 1;
  const KnnResult result = KnnLocate(db, {20., 0., 0.}, config);
  EXPECT_EQ(result.location, Eigen::Vector2d(5., 5.));
  EXPECT_EQ(result.mean_distance, 0.);
}

TEST(KnnLocateTest, TiesGoToLowerIndex) {
  magnetic::FingerprintDatabase db;
  db.entries = {{{0., 0.}, {1., 0., 0.}}, {{3., 3.}, {-1., 0., 0.}}};
  CoarseConfig config;
  config.k = 1;
  EXPECT_EQ(KnnLocate(db, {0., 0., 0.}, config).location,
            Eigen::Vector2d(0., 0.));
  const std::vector<Neighbor> both = FindNearestFingerprints(db, {0., 0., 0.}, 2);
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both[0].index, 0u);
  EXPECT_EQ(both[1].index, 1u);
}

TEST(KnnLocateTest, MajorityVoteBeatsSingleClosest) {
  magnetic::FingerprintDatabase db;
  db.entries = {{{0., 0.}, {10., 0., 0.}},
                {{5., 0.}, {10.5, 0., 0.}},
                {{5.05, 0.}, {10.6, 0., 0.}},
                {{5.1, 0.}, {10.7, 0., 0.}}};
  CoarseConfig config;
  config.k = 4;
  const KnnResult result = KnnLocate(db, {10., 0., 0.}, config);
  EXPECT_NEAR(result.location.x(), 5.05, 1e-12);
  EXPECT_EQ(result.cluster.size(), 3u);
}

TEST(KnnLocateTest, RejectsBadArguments) {
  magnetic::FingerprintDatabase db;
  CoarseConfig config;
  EXPECT_THROW(KnnLocate(db, {0., 0., 0.}, config), std::invalid_argument);
  db.entries = {{{0., 0.}, {1., 0., 0.}}};
  config.k = 2;
  EXPECT_THROW(KnnLocate(db, {0., 0., 0.}, config), std::invalid_argument);
  config.k = 0;
  EXPECT_THROW(KnnLocate(db, {0., 0., 0.}, config), std::invalid_argument);
}

TEST(FindNearestFingerprintsTest, MatchesBruteForce) {
  const magnetic::FingerprintDatabase db = RandomDatabase(2000, 9);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> field(-60., 60.);
  for (int q = 0; q < 50; ++q) {
    const Eigen::Vector3d query(field(rng), field(rng), field(rng));
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < db.size(); ++i) {
      all.emplace_back((db.entries[i].field - query).norm(), i);
    }
    std::sort(all.begin(), all.end());
    for (const int k : {1, 3, 5}) {
      const std::vector<Neighbor> found = FindNearestFingerprints(db, query, k);
      ASSERT_EQ(found.size(), static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        EXPECT_EQ(found[i].index, all[i].second);
        EXPECT_DOUBLE_EQ(found[i].distance, all[i].first);
      }
    }
  }
}

TEST(EstimateHeadingTest, IdentityIsHeadingZero) {
  const Eigen::Vector3d field(40., 5., -30.);
  const HeadingEstimate estimate = EstimateHeading(field, field, CoarseConfig());
  EXPECT_EQ(estimate.heading, 0.);
  EXPECT_NEAR(estimate.rotation_angle, 0., 1e-6);
  EXPECT_FALSE(estimate.rotation_axis.has_value());
}

TEST(EstimateHeadingTest, AntiparallelHorizontalIsHalfTurn) {
  const HeadingEstimate estimate =
      EstimateHeading({-40., 0., 0.}, {40., 0., 0.}, CoarseConfig());
  EXPECT_NEAR(std::abs(estimate.heading), kPi, 1e-12);
  EXPECT_NEAR(estimate.rotation_angle, kPi, 1e-6);
}

TEST(EstimateHeadingTest, RecoversEveryCandidateWithoutNoise) {
  const CoarseConfig config;
  const Eigen::Vector3d global(30., 20., -35.);
  for (const double heading : config.heading_candidates) {
    const Eigen::Vector3d body = transform::RotateAboutZ(-heading, global);
    const HeadingEstimate estimate = EstimateHeading(body, global, config);
    EXPECT_NEAR(transform::NormalizeAngle(estimate.heading - heading), 0.,
                1e-12);
  }
}

TEST(EstimateHeadingTest, SimulatedMagnetometerRoundTrip) {
  const world::World& world = testing::DefaultWorld();
  world::WorldConfig noiseless = world.config;
  noiseless.mag_noise_sigma = 0.;
  const CoarseConfig config;
  world::RandomEngine rng(1);
  for (const double heading : config.heading_candidates) {
    const transform::Pose2 pose(6.3, 1.1, heading);
    const Eigen::Vector3d body = world::SampleMagnetometer(noiseless, pose, &rng);
    const Eigen::Vector3d global =
        world::FieldAt(noiseless, {pose.x, pose.y, noiseless.sensor_height});
    EXPECT_NEAR(transform::NormalizeAngle(
                    EstimateHeading(body, global, config).heading - heading),
                0., 1e-9);
  }
}

TEST(EstimateHeadingTest, AlwaysReturnsACandidate) {
  const CoarseConfig config;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-50., 50.);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Vector3d a(u(rng), u(rng), u(rng));
    const Eigen::Vector3d b(u(rng), u(rng), u(rng));
    const double heading = EstimateHeading(a, b, config).heading;
    EXPECT_TRUE(std::any_of(config.heading_candidates.begin(),
                            config.heading_candidates.end(),
                            [&](double c) { return c == heading; }));
  }
  EXPECT_THROW(EstimateHeading({0., 0., 0.}, {1., 0., 0.}, config),
               std::invalid_argument);
}

TEST(EstimateCoarsePoseTest, InSampleQueryReturnsTheNode) {
  const bench::Maps& maps = testing::DefaultMaps();
  CoarseConfig config;
  config.k = 1;
  const magnetic::MagFingerprint& node = maps.training.entries[1234];
  for (const double heading : config.heading_candidates) {
    const Eigen::Vector3d body = transform::RotateAboutZ(-heading, node.field);
    const CoarsePoseResult result =
        EstimateCoarsePose(maps.training, maps.magmap, body, config);
    EXPECT_TRUE(result.pose.has_location);
    EXPECT_TRUE(result.pose.has_heading);
    EXPECT_LE((result.pose.location - node.location).norm(), 1e-12);
    EXPECT_NEAR(transform::NormalizeAngle(result.pose.heading - heading), 0.,
                1e-9);
  }
}

TEST(EstimateCoarsePoseTest, LinearGradientWorldLocatesBetweenNodes) {
  // A field that varies linearly in x and y is unique everywhere, so k-NN
  // off the node lattice lands on one of the surrounding nodes.
  magnetic::FingerprintDatabase db;
  for (int iy = 0; iy <= 10; ++iy) {
    for (int ix = 0; ix <= 100; ++ix) {
      const Eigen::Vector2d p(0.1 * ix, 0.1 * iy);
      db.entries.push_back({p, {20. + 3. * p.x(), 5. + 4. * p.y(), -30.}});
    }
  }
  const magnetic::MagGridMap map = magnetic::BuildGridMap(db, {});
  CoarseConfig config;
  config.k = 1;
  const Eigen::Vector2d truth(4.37, 0.52);
  const Eigen::Vector3d global(20. + 3. * truth.x(), 5. + 4. * truth.y(), -30.);
  const CoarsePoseResult result = EstimateCoarsePose(
      db, map, transform::RotateAboutZ(-0.5 * kPi, global), config);
  EXPECT_LE((result.pose.location - truth).norm(), 0.2);
  EXPECT_NEAR(result.pose.heading, 0.5 * kPi, 1e-9);
}

TEST(EstimateCoarsePoseTest, DeclinationShiftsHeading) {
  const bench::Maps& maps = testing::DefaultMaps();
  CoarseConfig config;
  config.k = 1;
  const magnetic::MagFingerprint& node = maps.training.entries[500];
  // A small declination snaps back to the same wall-parallel heading.
  config.declination = 0.1;
  EXPECT_EQ(
      EstimateCoarsePose(maps.training, maps.magmap, node.field, config)
          .pose.heading,
      0.);
  config.declination = 1.;
  EXPECT_NEAR(
      EstimateCoarsePose(maps.training, maps.magmap, node.field, config)
          .pose.heading,
      -0.5 * kPi, 1e-12);
}

}  // namespace
}  // namespace coarse
}  // namespace magloc
