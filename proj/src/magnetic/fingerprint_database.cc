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

#include "magloc/magnetic/fingerprint_database.h"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "magloc/transform/pose2.h"

namespace magloc {
namespace magnetic {

FingerprintDatabase BuildDatabase(
    std::span<const world::GroundTruthState> states,
    std::span<const Eigen::Vector3d> readings) {
  if (states.size() != readings.size()) {
    throw std::invalid_argument(
        "BuildDatabase: states and readings differ in length");
  }
  if (states.empty()) {
    throw std::invalid_argument("BuildDatabase: empty input");
  }
  FingerprintDatabase db;
  db.entries.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    db.entries.push_back(
        {states[i].pose.translation(),
         transform::RotateAboutZ(states[i].pose.heading, readings[i])});
  }
  return db;
}

void WriteFingerprintCsv(const FingerprintDatabase& db, std::ostream& out) {
  out << "x,y,bx,by,bz\n";
  char buffer[160];
  for (const MagFingerprint& fp : db.entries) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  fp.location.x(), fp.location.y(), fp.field.x(),
                  fp.field.y(), fp.field.z());
    out << buffer;
  }
}

FingerprintDatabase ReadFingerprintCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,bx,by,bz", 0) != 0) {
    throw std::runtime_error("fingerprint csv: missing 'x,y,bx,by,bz' header");
  }
  FingerprintDatabase db;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    double values[5];
    for (double& value : values) {
      std::string cell;
      if (!std::getline(fields, cell, ',')) {
        throw std::runtime_error("fingerprint csv: line " +
                                 std::to_string(line_number) +
                                 " has fewer than 5 columns");
      }
      try {
        value = std::stod(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("fingerprint csv: line " +
                                 std::to_string(line_number) +
                                 ": bad number '" + cell + "'");
      }
    }
    db.entries.push_back({{values[0], values[1]},
                          {values[2], values[3], values[4]}});
  }
  return db;
}

}  // namespace magnetic
}  // namespace magloc
