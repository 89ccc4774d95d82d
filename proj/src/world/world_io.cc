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

#include "magloc/world/world_io.h"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace magloc {
namespace world {
namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  // Advances to the next non-blank, non-comment line and returns its key.
  bool Next(std::string* key) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (const auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      fields_.clear();
      fields_.str(line);
      if (fields_ >> *key) return true;
    }
    return false;
  }

  double Number() {
    double value;
    if (!(fields_ >> value)) Fail("expected a number");
    return value;
  }

  std::string Word() {
    std::string value;
    if (!(fields_ >> value)) Fail("expected a name");
    return value;
  }

  void ExpectEnd() {
    std::string extra;
    if (fields_ >> extra) Fail("unexpected trailing field '" + extra + "'");
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw std::runtime_error(source_ + ":" + std::to_string(line_number_) +
                             ": " + message);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::istringstream fields_;
  int line_number_ = 0;
};

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

}  // namespace

World ParseWorld(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  WorldConfig config;
  std::vector<Segment> segments;
  std::vector<Box> blocks;
  Eigen::Vector2d origin(0., 0.);
  std::optional<Eigen::Vector2d> size;

  std::string key;
  while (reader.Next(&key)) {
    if (key == "origin") {
      origin.x() = reader.Number();
      origin.y() = reader.Number();
    } else if (key == "size") {
      const double w = reader.Number();
      const double h = reader.Number();
      size = Eigen::Vector2d(w, h);
    } else if (key == "segment") {
      Segment s;
      s.a.x() = reader.Number();
      s.a.y() = reader.Number();
      s.b.x() = reader.Number();
      s.b.y() = reader.Number();
      segments.push_back(s);
    } else if (key == "block") {
      Box b;
      b.min.x() = reader.Number();
      b.min.y() = reader.Number();
      b.max.x() = reader.Number();
      b.max.y() = reader.Number();
      blocks.push_back(b);
    } else if (key == "dipole") {
      DipoleSource d;
      for (int i = 0; i < 3; ++i) d.position[i] = reader.Number();
      for (int i = 0; i < 3; ++i) d.moment[i] = reader.Number();
      config.dipoles.push_back(d);
    } else if (key == "ambient_field") {
      for (int i = 0; i < 3; ++i) config.ambient_field[i] = reader.Number();
    } else if (key == "declination") {
      config.declination = reader.Number();
    } else if (key == "mag_noise_sigma") {
      config.mag_noise_sigma = reader.Number();
    } else if (key == "sensor_height") {
      config.sensor_height = reader.Number();
    } else if (key == "lidar_max_range") {
      config.lidar_max_range = reader.Number();
    } else if (key == "lidar_beam_count") {
      config.lidar_beam_count = static_cast<int>(reader.Number());
    } else if (key == "lidar_fov") {
      config.lidar_fov = reader.Number();
    } else if (key == "lidar_range_sigma") {
      config.lidar_range_sigma = reader.Number();
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(reader.Number());
    } else {
      reader.Fail("unknown key '" + key + "'");
    }
    reader.ExpectEnd();
  }
  if (!size) {
    throw std::runtime_error(source + ": missing 'size'");
  }
  try {
    config.Validate();
    return World{FloorPlan(Box{origin, origin + *size}, std::move(segments),
                           std::move(blocks)),
                 config};
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
}

World LoadWorld(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return ParseWorld(in, path);
}

RouteSet ParseRoutes(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  RouteSet set;
  std::string key;
  while (reader.Next(&key)) {
    if (key == "speed") {
      set.speed = reader.Number();
    } else if (key == "sample_dt") {
      set.sample_dt = reader.Number();
    } else if (key == "route") {
      set.routes.push_back({reader.Word(), {}});
    } else if (key == "waypoint") {
      if (set.routes.empty()) reader.Fail("waypoint before any 'route'");
      const double x = reader.Number();
      const double y = reader.Number();
      set.routes.back().waypoints.emplace_back(x, y, 0.);
    } else {
      reader.Fail("unknown key '" + key + "'");
    }
    reader.ExpectEnd();
  }
  if (set.routes.empty()) {
    throw std::runtime_error(source + ": no routes");
  }
  return set;
}

RouteSet LoadRoutes(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return ParseRoutes(in, path);
}

}  // namespace world
}  // namespace magloc
