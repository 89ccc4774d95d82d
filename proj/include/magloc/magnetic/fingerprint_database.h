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

#ifndef MAGLOC_MAGNETIC_FINGERPRINT_DATABASE_H_
#define MAGLOC_MAGNETIC_FINGERPRINT_DATABASE_H_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "magloc/world/route.h"

namespace magloc {
namespace magnetic {

// A location paired with the 3-D field vector observed there (microtesla).
struct MagFingerprint {
  Eigen::Vector2d location = Eigen::Vector2d::Zero();
  Eigen::Vector3d field = Eigen::Vector3d::Zero();
};

// Ordered fingerprints. The index of an entry is the tie-break key for
// matching, so the order is part of the database's identity.
struct FingerprintDatabase {
  std::vector<MagFingerprint> entries;
  std::string frame = "global";

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

// Rotates each body-frame reading into the global frame with the aligned
// ground-truth heading, so the stored fields do not depend on the direction
// a route was driven in.
FingerprintDatabase BuildDatabase(
    std::span<const world::GroundTruthState> states,
    std::span<const Eigen::Vector3d> readings);

// CSV with header 'x,y,bx,by,bz'. Values are written with round-trip
// precision.
void WriteFingerprintCsv(const FingerprintDatabase& db, std::ostream& out);
FingerprintDatabase ReadFingerprintCsv(std::istream& in);

}  // namespace magnetic
}  // namespace magloc

#endif  // MAGLOC_MAGNETIC_FINGERPRINT_DATABASE_H_
