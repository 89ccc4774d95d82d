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

#include "magloc/scan_matching/pose_optimizer.h"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "Eigen/Eigenvalues"

namespace magloc {
namespace scan_matching {
namespace {

// Below this largest eigenvalue of J^T J the cost is flat.
constexpr double kMinCurvature = 1e-12;
// Directions with curvature below this fraction of the largest are held.
constexpr double kMinReciprocalCondition = 1e-10;

struct Linearization {
  double cost = 0.;
  Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();  // J^T J
  Eigen::Vector3d jtr = Eigen::Vector3d::Zero();      // J^T r
};

Linearization Linearize(const mapping::OccupancyGrid& grid,
                        std::span<const Eigen::Vector2d> endpoints,
                        const transform::Pose2& pose) {
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  Linearization result;
  for (const Eigen::Vector2d& point : endpoints) {
    const Eigen::Vector2d world(c * point.x() - s * point.y() + pose.x,
                                s * point.x() + c * point.y() + pose.y);
    const mapping::SmoothedProbability m = mapping::SmoothedLookup(grid, world);
    const double residual = 1. - m.value;
    // d(world)/d(psi)
    const Eigen::Vector2d d_rotation(-s * point.x() - c * point.y(),
                                     c * point.x() - s * point.y());
    const Eigen::Vector3d jacobian(-m.gradient.x(), -m.gradient.y(),
                                   -m.gradient.dot(d_rotation));
    result.cost += residual * residual;
    result.hessian += jacobian * jacobian.transpose();
    result.jtr += jacobian * residual;
  }
  return result;
}

double Cost(const mapping::OccupancyGrid& grid,
            std::span<const Eigen::Vector2d> endpoints,
            const transform::Pose2& pose) {
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  double cost = 0.;
  for (const Eigen::Vector2d& point : endpoints) {
    const Eigen::Vector2d world(c * point.x() - s * point.y() + pose.x,
                                s * point.x() + c * point.y() + pose.y);
    const double residual = 1. - mapping::SmoothedLookup(grid, world).value;
    cost += residual * residual;
  }
  return cost;
}

transform::Pose2 Step(const transform::Pose2& pose,
                      const Eigen::Vector3d& delta) {
  return transform::Pose2(pose.x + delta.x(), pose.y + delta.y(),
                          pose.heading + delta.z());
}

// Gauss-Newton step over the directions the scan constrains. Along a
// straight wall the longitudinal direction is unobserved and is held fixed.
std::optional<Eigen::Vector3d> SolveNormalEquations(
    const Linearization& linearization) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigen(
      linearization.hessian);
  if (eigen.info() != Eigen::Success) return std::nullopt;
  const Eigen::Vector3d& values = eigen.eigenvalues();  // ascending
  if (!(values[2] > kMinCurvature)) return std::nullopt;
  Eigen::Vector3d step = Eigen::Vector3d::Zero();
  for (int k = 0; k < 3; ++k) {
    if (!(values[k] > kMinReciprocalCondition * values[2])) continue;
    const Eigen::Vector3d direction = eigen.eigenvectors().col(k);
    step -= direction * (direction.dot(linearization.jtr) / values[k]);
  }
  return step;
}

}  // namespace

MatchCost ComputeMatchCost(const mapping::OccupancyGrid& grid,
                           std::span<const Eigen::Vector2d> endpoints,
                           const transform::Pose2& pose) {
  const Linearization linearization = Linearize(grid, endpoints, pose);
  return {linearization.cost, 2. * linearization.jtr};
}

MatchCost ComputeMatchCost(const mapping::OccupancyGrid& grid,
                           const sensor::LaserScan& scan,
                           const transform::Pose2& pose) {
  const std::vector<Eigen::Vector2d> endpoints = sensor::ScanEndpoints(scan);
  if (endpoints.empty()) {
    throw std::invalid_argument("ComputeMatchCost: scan has no returns");
  }
  return ComputeMatchCost(grid, endpoints, pose);
}

double MatchScore(const mapping::OccupancyGrid& grid,
                  std::span<const Eigen::Vector2d> endpoints,
                  const transform::Pose2& pose) {
  if (endpoints.empty()) return 0.;
  double sum = 0.;
  for (const Eigen::Vector2d& point : endpoints) {
    sum += mapping::SmoothedLookup(grid, transform::TransformPoint(pose, point))
               .value;
  }
  return sum / endpoints.size();
}

MatchResult OptimizePose(const mapping::OccupancyGrid& grid,
                         std::span<const Eigen::Vector2d> endpoints,
                         const transform::Pose2& initial,
                         const MatcherConfig& config,
                         std::vector<IterationTrace>* const trace) {
  if (!initial.IsFinite()) {
    throw std::invalid_argument("OptimizePose: non-finite initial pose");
  }
  MatchResult result;
  result.pose = initial;
  Linearization linearization = Linearize(grid, endpoints, result.pose);
  result.initial_cost = linearization.cost;
  result.cost = linearization.cost;
  if (trace != nullptr) trace->push_back({0, result.pose, result.cost});

  while (result.iterations < config.max_iterations) {
    ++result.iterations;
    const std::optional<Eigen::Vector3d> solved =
        SolveNormalEquations(linearization);
    if (!solved) {
      result.diagnostic = "singular normal equations";
      break;
    }
    Eigen::Vector3d step = *solved;
    if (!step.allFinite()) {
      result.diagnostic = "non-finite Gauss-Newton step";
      break;
    }

    bool accepted = false;
    transform::Pose2 candidate;
    double candidate_cost = 0.;
    for (int halving = 0; halving <= config.max_step_halvings; ++halving) {
      candidate = Step(result.pose, step);
      candidate_cost = Cost(grid, endpoints, candidate);
      if (candidate_cost < result.cost) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No descent along the damped Gauss-Newton direction: local minimum.
      result.converged = true;
      break;
    }
    result.pose = candidate;
    result.cost = candidate_cost;
    if (trace != nullptr) {
      trace->push_back({result.iterations, result.pose, result.cost});
    }
    if (step.head<2>().norm() < config.translation_tolerance &&
        std::abs(step.z()) < config.rotation_tolerance) {
      result.converged = true;
      break;
    }
    linearization = Linearize(grid, endpoints, result.pose);
  }
  if (!result.converged && result.diagnostic.empty()) {
    result.diagnostic = "iteration limit reached";
  }
  result.score = MatchScore(grid, endpoints, result.pose);
  return result;
}

}  // namespace scan_matching
}  // namespace magloc
