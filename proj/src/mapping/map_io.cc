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

#include "magloc/mapping/map_io.h"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace magloc {
namespace mapping {
namespace {

constexpr std::uint8_t kOccupiedPixel = 0;
constexpr std::uint8_t kFreePixel = 254;
constexpr std::uint8_t kUnknownPixel = 205;

static_assert(std::endian::native == std::endian::little,
              "probability layer is written in native little-endian order");

std::uint8_t ToPixel(double probability) {
  if (probability >= kOccupiedThreshold) return kOccupiedPixel;
  if (probability <= kFreeThreshold) return kFreePixel;
  return kUnknownPixel;
}

double FromPixel(std::uint8_t pixel) {
  if (pixel == kOccupiedPixel) return 0.98;
  if (pixel == kFreePixel) return 0.02;
  return kUnknownProbability;
}

void CheckWritten(const std::ofstream& out, const std::string& filename) {
  if (!out) throw std::runtime_error("writing '" + filename + "' failed");
}

// Skips whitespace and '#' comments between PGM header tokens.
int ReadPgmInt(std::istream& in, const std::string& filename) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value;
  if (!(in >> value)) {
    throw std::runtime_error("'" + filename + "': malformed PGM header");
  }
  return value;
}

}  // namespace

void WriteOccupancyGrid(const OccupancyGrid& grid, const std::string& stem) {
  const std::string pgm_filename = stem + ".pgm";
  {
    std::ofstream pgm(pgm_filename, std::ios::out | std::ios::binary);
    const std::string header = "P5\n# magloc map; " +
                               std::to_string(grid.resolution()) +
                               " m/pixel\n" + std::to_string(grid.nx()) + " " +
                               std::to_string(grid.ny()) + "\n255\n";
    pgm.write(header.data(), header.size());
    for (int row = 0; row < grid.ny(); ++row) {
      const int iy = grid.ny() - 1 - row;
      for (int ix = 0; ix < grid.nx(); ++ix) {
        pgm.put(static_cast<char>(ToPixel(grid.probability({ix, iy}))));
      }
    }
    CheckWritten(pgm, pgm_filename);
  }

  const std::string meta_filename = stem + ".txt";
  {
    std::ofstream meta(meta_filename);
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "image %s.pgm\nresolution %.17g\norigin_x %.17g\n"
                  "origin_y %.17g\noccupied_thresh %g\nfree_thresh %g\n",
                  stem.substr(stem.find_last_of('/') + 1).c_str(),
                  grid.resolution(), grid.origin().x(), grid.origin().y(),
                  kOccupiedThreshold, kFreeThreshold);
    meta << buffer;
    CheckWritten(meta, meta_filename);
  }

  const std::string prob_filename = stem + ".prob";
  {
    std::ofstream prob(prob_filename, std::ios::out | std::ios::binary);
    prob.write(reinterpret_cast<const char*>(grid.cells().data()),
               static_cast<std::streamsize>(grid.cells().size() *
                                            sizeof(double)));
    CheckWritten(prob, prob_filename);
  }
}

OccupancyGrid ReadOccupancyGrid(const std::string& stem) {
  const std::string meta_filename = stem + ".txt";
  std::ifstream meta(meta_filename);
  if (!meta) throw std::runtime_error("cannot open '" + meta_filename + "'");
  std::map<std::string, std::string> values;
  std::string key, value;
  while (meta >> key >> value) values[key] = value;
  const auto number = [&](const std::string& name) {
    const auto it = values.find(name);
    if (it == values.end()) {
      throw std::runtime_error("'" + meta_filename + "': missing '" + name +
                               "'");
    }
    try {
      return std::stod(it->second);
    } catch (const std::exception&) {
      throw std::runtime_error("'" + meta_filename + "': bad value for '" +
                               name + "'");
    }
  };
  const double resolution = number("resolution");
  const Eigen::Vector2d origin(number("origin_x"), number("origin_y"));

  const std::string pgm_filename = stem + ".pgm";
  std::ifstream pgm(pgm_filename, std::ios::in | std::ios::binary);
  if (!pgm) throw std::runtime_error("cannot open '" + pgm_filename + "'");
  std::string magic;
  pgm >> magic;
  if (magic != "P5") {
    throw std::runtime_error("'" + pgm_filename + "': not a binary PGM");
  }
  const int nx = ReadPgmInt(pgm, pgm_filename);
  const int ny = ReadPgmInt(pgm, pgm_filename);
  const int max_value = ReadPgmInt(pgm, pgm_filename);
  if (nx <= 0 || ny <= 0 || max_value != 255) {
    throw std::runtime_error("'" + pgm_filename + "': unsupported PGM layout");
  }
  pgm.get();
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(nx) * ny);
  pgm.read(reinterpret_cast<char*>(pixels.data()),
           static_cast<std::streamsize>(pixels.size()));
  if (!pgm) throw std::runtime_error("'" + pgm_filename + "': truncated");

  OccupancyGrid grid(origin, resolution, nx, ny);
  std::ifstream prob(stem + ".prob", std::ios::in | std::ios::binary);
  if (prob) {
    std::vector<double> cells(pixels.size());
    prob.read(reinterpret_cast<char*>(cells.data()),
              static_cast<std::streamsize>(cells.size() * sizeof(double)));
    if (!prob || prob.peek() != std::char_traits<char>::eof()) {
      throw std::runtime_error("'" + stem + ".prob': size does not match map");
    }
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        grid.SetProbability({ix, iy},
                            cells[static_cast<std::size_t>(iy) * nx + ix]);
      }
    }
    return grid;
  }
  for (int row = 0; row < ny; ++row) {
    for (int ix = 0; ix < nx; ++ix) {
      grid.SetProbability(
          {ix, ny - 1 - row},
          FromPixel(pixels[static_cast<std::size_t>(row) * nx + ix]));
    }
  }
  return grid;
}

}  // namespace mapping
}  // namespace magloc
