// SPDX-License-Identifier: Apache-2.0
//
// Seeded synthetic fleets on a synthetic sea, for tests and benchmarks.
#pragma once

#include <cstdint>
#include <vector>

#include "hydronoise/acoustics.hpp"
#include "hydronoise/enrich.hpp"
#include "hydronoise/grid.hpp"
#include "hydronoise/ingest.hpp"

namespace hydronoise {

struct ScenarioOptions {
  std::uint64_t seed = 42;
  int n_vessels = 10;
  std::int64_t duration_s = 2 * 3600;
  Instant start{1590969600};  // 2020-06-01T00:00:00Z
  int n_cols = 50;
  int n_rows = 50;
  double cell_size = 1000.0;
  Point origin{300000.0, 4850000.0};
  int epsg = 32633;
  std::vector<int> frequencies{63, 125, 400, 4000};
  /// Depth rises linearly from west to east between these values.
  double min_depth_m = 15.0;
  double max_depth_m = 100.0;
  /// Puts a small island (land cells) in the north-east quadrant.
  bool island = true;
  /// L90 values drawn uniformly per station and frequency.
  double ambient_min_db = 60.0;
  double ambient_max_db = 82.0;
  double min_engine_hp = 150.0;
  double max_engine_hp = 1200.0;
};

struct Scenario {
  Grid grid;
  Registry registry;
  std::vector<EnrichedTrip> trips;
  std::vector<HydrophoneStation> stations;
  TimeWindow window;
  FrequencyTable table;
};

/// Vessels alternate navigation legs (8-11 kn) and fishing legs (2-4 kn)
/// of 15-40 minutes, turning at the grid edge. Trips are sampled every 60 s.
/// Ambient surfaces are interpolated from four stations for every month the
/// window touches.
Scenario make_scenario(const ScenarioOptions& options = {});

}  // namespace hydronoise
