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

#ifndef MAGLOC_COARSE_COARSE_LOCALIZER_H_
#define MAGLOC_COARSE_COARSE_LOCALIZER_H_

#include <array>
#include <numbers>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "magloc/magnetic/fingerprint_database.h"
#include "magloc/magnetic/mag_grid_map.h"

namespace magloc {
namespace coarse {

struct CoarseConfig {
  int k = 5;
  // Wall-parallel headings in the global frame.
  std::array<double, 4> heading_candidates = {
      0., 0.5 * std::numbers::pi, std::numbers::pi, -0.5 * std::numbers::pi};
  // Neighbors closer than this are voted as one location (meters).
  double cluster_radius = 0.1;
  // Declination; the estimated heading is corrected by theta_d = theta - delta.
  double declination = 0.;
};

// Location and heading handed to fine localization. Either part may be
// missing, depending on the initialization option.
struct InitialPose {
  Eigen::Vector2d location = Eigen::Vector2d::Zero();
  double heading = 0.;
  bool has_location = false;
  bool has_heading = false;
};

// Euclidean distance between two field vectors.
double MagDistance(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

struct Neighbor {
  std::size_t index;
  double distance;
};

// The 'k' entries closest to 'query', ordered by (distance, index).
std::vector<Neighbor> FindNearestFingerprints(
    const magnetic::FingerprintDatabase& db, const Eigen::Vector3d& query,
    int k);

struct KnnResult {
  Eigen::Vector2d location = Eigen::Vector2d::Zero();
  std::vector<Neighbor> neighbors;
  // Members of the winning location cluster, as indices into 'neighbors'.
  std::vector<std::size_t> cluster;
  double mean_distance = 0.;  // over all k neighbors
};

// k-NN with a majority vote over locations: neighbors are grouped into
// clusters of radius 'cluster_radius' around the closest unassigned
// neighbor, and the centroid of the largest cluster is returned. Equal
// sizes go to the cluster with the smaller mean distance, then the one
// seeded first. Throws std::invalid_argument for an empty database or k
// outside [1, |db|].
KnnResult KnnLocate(const magnetic::FingerprintDatabase& db,
                    const Eigen::Vector3d& query, const CoarseConfig& config);

struct HeadingEstimate {
  double heading = 0.;
  double rotation_angle = 0.;                     // phi
  std::optional<Eigen::Vector3d> rotation_axis;  // absent when degenerate
};

// Heading of the body frame from one body-frame reading 'body_field' and
// the global-frame field 'global_field' at the same place.
//
// phi = acos(B_L.B_G / (|B_L||B_G|)) and a = B_L x B_G / |B_L x B_G| are
// compared against the (phi, sign a_z) each candidate heading would
// produce under B_L = R(-heading) B_G; the closest candidate wins. Within
// 1e-6 of phi = 0 or pi the axis is not computed and phi alone decides.
// Throws std::invalid_argument for zero-magnitude input.
HeadingEstimate EstimateHeading(const Eigen::Vector3d& body_field,
                                const Eigen::Vector3d& global_field,
                                const CoarseConfig& config);

struct HeadingHypothesis {
  double heading = 0.;
  KnnResult knn;
};

struct CoarsePoseResult {
  InitialPose pose;
  std::vector<HeadingHypothesis> hypotheses;  // one per candidate heading
  std::size_t best_hypothesis = 0;
  std::optional<HeadingEstimate> heading_check;
};

// Joint location and heading: each candidate heading rotates 'body_field'
// into a hypothesized global vector, k-NN locates it in 'training', and the
// hypothesis with the smallest mean neighbor distance wins. The heading is
// then confirmed by EstimateHeading against the map field at the chosen
// location when the map covers it.
CoarsePoseResult EstimateCoarsePose(const magnetic::FingerprintDatabase& training,
                                    const magnetic::MagGridMap& map,
                                    const Eigen::Vector3d& body_field,
                                    const CoarseConfig& config);

}  // namespace coarse
}  // namespace magloc

#endif  // MAGLOC_COARSE_COARSE_LOCALIZER_H_
