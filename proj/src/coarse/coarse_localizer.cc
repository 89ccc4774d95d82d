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

#include "magloc/coarse/coarse_localizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "Eigen/Geometry"
#include "magloc/transform/pose2.h"

namespace magloc {
namespace coarse {
namespace {

// Below this |a_z| the rotation axis is treated as horizontal.
constexpr double kAxisZEpsilon = 1e-9;
constexpr double kDegenerateAngle = 1e-6;

bool NeighborLess(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance ||
         (a.distance == b.distance && a.index < b.index);
}

int SignOf(double value) { return (value > 0.) - (value < 0.); }

double AngleBetween(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double cosine = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(cosine, -1., 1.));
}

double NearestCandidate(const CoarseConfig& config, double heading) {
  double best = config.heading_candidates.front();
  double best_gap = std::numeric_limits<double>::infinity();
  for (const double candidate : config.heading_candidates) {
    const double gap = std::abs(transform::NormalizeAngle(heading - candidate));
    if (gap < best_gap) {
      best_gap = gap;
      best = candidate;
    }
  }
  return best;
}

}  // namespace

double MagDistance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return (a - b).norm();
}

std::vector<Neighbor> FindNearestFingerprints(
    const magnetic::FingerprintDatabase& db, const Eigen::Vector3d& query,
    const int k) {
  if (db.empty()) {
    throw std::invalid_argument("k-NN: empty fingerprint database");
  }
  if (k < 1 || static_cast<std::size_t>(k) > db.size()) {
    throw std::invalid_argument("k-NN: k must be in [1, database size]");
  }
  // Max-heap on (distance, index): the top is the worst neighbor kept so far.
  std::priority_queue<Neighbor, std::vector<Neighbor>,
                      decltype(&NeighborLess)>
      heap(&NeighborLess);
  for (std::size_t i = 0; i < db.size(); ++i) {
    const Neighbor candidate{i, MagDistance(db.entries[i].field, query)};
    if (heap.size() < static_cast<std::size_t>(k)) {
      heap.push(candidate);
    } else if (NeighborLess(candidate, heap.top())) {
      heap.pop();
      heap.push(candidate);
    }
  }
  std::vector<Neighbor> neighbors;
  neighbors.reserve(k);
  while (!heap.empty()) {
    neighbors.push_back(heap.top());
    heap.pop();
  }
  std::reverse(neighbors.begin(), neighbors.end());
  return neighbors;
}

KnnResult KnnLocate(const magnetic::FingerprintDatabase& db,
                    const Eigen::Vector3d& query, const CoarseConfig& config) {
  KnnResult result;
  result.neighbors = FindNearestFingerprints(db, query, config.k);

  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t n = 0; n < result.neighbors.size(); ++n) {
    const Eigen::Vector2d& location =
        db.entries[result.neighbors[n].index].location;
    auto it = std::find_if(
        clusters.begin(), clusters.end(), [&](const auto& cluster) {
          const Eigen::Vector2d& seed =
              db.entries[result.neighbors[cluster.front()].index].location;
          return (seed - location).norm() <= config.cluster_radius;
        });
    if (it == clusters.end()) {
      clusters.push_back({n});
    } else {
      it->push_back(n);
    }
  }

  const auto mean_distance = [&](const std::vector<std::size_t>& cluster) {
    double sum = 0.;
    for (const std::size_t n : cluster) sum += result.neighbors[n].distance;
    return sum / cluster.size();
  };
  std::size_t winner = 0;
  for (std::size_t c = 1; c < clusters.size(); ++c) {
    const auto& challenger = clusters[c];
    const auto& incumbent = clusters[winner];
    if (challenger.size() > incumbent.size() ||
        (challenger.size() == incumbent.size() &&
         mean_distance(challenger) < mean_distance(incumbent))) {
      winner = c;
    }
  }

  result.cluster = clusters[winner];
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const std::size_t n : result.cluster) {
    centroid += db.entries[result.neighbors[n].index].location;
  }
  result.location = centroid / static_cast<double>(result.cluster.size());
  double total = 0.;
  for (const Neighbor& neighbor : result.neighbors) total += neighbor.distance;
  result.mean_distance = total / result.neighbors.size();
  return result;
}

HeadingEstimate EstimateHeading(const Eigen::Vector3d& body_field,
                                const Eigen::Vector3d& global_field,
                                const CoarseConfig& config) {
  if (!(body_field.norm() > 0.) || !(global_field.norm() > 0.)) {
    throw std::invalid_argument("EstimateHeading: zero-magnitude field");
  }
  HeadingEstimate estimate;
  estimate.rotation_angle = AngleBetween(body_field, global_field);
  const double phi = estimate.rotation_angle;
  int measured_sign = 0;
  if (phi > kDegenerateAngle && phi < std::numbers::pi - kDegenerateAngle) {
    const Eigen::Vector3d cross = body_field.cross(global_field);
    if (cross.norm() > 0.) {
      estimate.rotation_axis = cross.normalized();
      measured_sign = SignOf(estimate.rotation_axis->z());
      if (std::abs(estimate.rotation_axis->z()) < kAxisZEpsilon) {
        measured_sign = 0;
      }
    }
  }

  double best_heading = config.heading_candidates.front();
  double best_score = std::numeric_limits<double>::infinity();
  for (const double candidate : config.heading_candidates) {
    const Eigen::Vector3d predicted =
        transform::RotateAboutZ(-candidate, global_field);
    const double predicted_phi = AngleBetween(predicted, global_field);
    const double predicted_z = predicted.cross(global_field).z() /
                               (predicted.norm() * global_field.norm());
    const int predicted_sign =
        std::abs(predicted_z) < kAxisZEpsilon ? 0 : SignOf(predicted_z);
    const double score =
        (measured_sign == 0 || predicted_sign == 0)
            ? std::abs(phi - predicted_phi)
            : std::abs(measured_sign * phi - predicted_sign * predicted_phi);
    if (score < best_score) {
      best_score = score;
      best_heading = candidate;
    }
  }
  estimate.heading = NearestCandidate(config, best_heading - config.declination);
  return estimate;
}

CoarsePoseResult EstimateCoarsePose(
    const magnetic::FingerprintDatabase& training,
    const magnetic::MagGridMap& map, const Eigen::Vector3d& body_field,
    const CoarseConfig& config) {
  CoarsePoseResult result;
  for (const double candidate : config.heading_candidates) {
    const Eigen::Vector3d hypothesized_global =
        transform::RotateAboutZ(candidate, body_field);
    result.hypotheses.push_back(
        {candidate, KnnLocate(training, hypothesized_global, config)});
  }
  for (std::size_t h = 1; h < result.hypotheses.size(); ++h) {
    if (result.hypotheses[h].knn.mean_distance <
        result.hypotheses[result.best_hypothesis].knn.mean_distance) {
      result.best_hypothesis = h;
    }
  }
  const HeadingHypothesis& best = result.hypotheses[result.best_hypothesis];
  result.pose.location = best.knn.location;
  result.pose.heading =
      NearestCandidate(config, best.heading - config.declination);
  result.pose.has_location = true;
  result.pose.has_heading = true;
  if (const auto map_field = magnetic::QueryField(map, best.knn.location);
      map_field && body_field.norm() > 0.) {
    result.heading_check = EstimateHeading(body_field, *map_field, config);
    result.pose.heading = result.heading_check->heading;
  }
  return result;
}

}  // namespace coarse
}  // namespace magloc
