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

#ifndef MAGLOC_MAPPING_MAP_IO_H_
#define MAGLOC_MAPPING_MAP_IO_H_

#include <string>

#include "magloc/mapping/occupancy_grid.h"

namespace magloc {
namespace mapping {

constexpr double kOccupiedThreshold = 0.65;
constexpr double kFreeThreshold = 0.196;

// Writes '<stem>.pgm' (binary P5, 0 = occupied, 254 = free, 205 = unknown,
// first image row is the top of the map), '<stem>.txt' with resolution,
// origin and thresholds, and '<stem>.prob' holding the exact probabilities
// as little-endian float64 in row-major order from the bottom row.
void WriteOccupancyGrid(const OccupancyGrid& grid, const std::string& stem);

// Reads the files written above. Probabilities come from '<stem>.prob' when
// present, otherwise they are reconstructed from the thresholded image.
// Throws std::runtime_error on missing or malformed files.
OccupancyGrid ReadOccupancyGrid(const std::string& stem);

}  // namespace mapping
}  // namespace magloc

#endif  // MAGLOC_MAPPING_MAP_IO_H_
