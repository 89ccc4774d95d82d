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

#ifndef MAGLOC_TESTS_TEST_WORLDS_H_
#define MAGLOC_TESTS_TEST_WORLDS_H_

#include <string>

#include "magloc/bench/benchmark.h"
#include "magloc/bench/commands.h"
#include "magloc/world/world_io.h"

namespace magloc {
namespace testing {

inline std::string DataPath(const std::string& name) {
  return std::string(MAGLOC_DATA_DIR) + "/" + name;
}

inline const world::World& DefaultWorld() {
  static const world::World* const world =
      new world::World(world::LoadWorld(DataPath("corridor.world")));
  return *world;
}

inline const world::RouteSet& DefaultRoutes() {
  static const world::RouteSet* const routes =
      new world::RouteSet(world::LoadRoutes(DataPath("survey.routes")));
  return *routes;
}

// Maps of the default world, built once per test binary with seed 1.
inline const bench::Maps& DefaultMaps() {
  static const bench::Maps* const maps = [] {
    bench::MagneticSurvey survey = bench::BuildMagneticMap(
        DefaultWorld(), DefaultRoutes(), magnetic::GridMapOptions(), 1);
    return new bench::Maps(bench::MakeMaps(
        std::move(survey.map),
        bench::BuildOccupancyMap(DefaultWorld(), DefaultRoutes(),
                                 bench::GridMapConfig(), 1)));
  }();
  return *maps;
}

}  // namespace testing
}  // namespace magloc

#endif  // MAGLOC_TESTS_TEST_WORLDS_H_
