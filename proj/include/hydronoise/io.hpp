// SPDX-License-Identifier: Apache-2.0
//
// File formats shared by the command-line tools: the trips archive and
// GeoJSON cell layers.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hydronoise/enrich.hpp"
#include "hydronoise/grid.hpp"

namespace hydronoise {

using Metadata = std::map<std::string, std::string>;

/// JSON archive of enriched trips; doubles round-trip exactly.
void write_trips_json(std::span<const EnrichedTrip> trips, const Metadata& metadata, std::ostream& out);
/// Throws std::runtime_error on malformed input.
std::vector<EnrichedTrip> read_trips_json(std::istream& in, Metadata* metadata = nullptr);

/// Closed ring of a cell in WGS84, counter-clockwise from the south-west.
std::array<LonLat, 5> cell_ring_lonlat(const Grid& grid, const Projection& proj, CellId id);

using PropertyValue = std::variant<std::monostate, double, std::int64_t, std::string>;

struct CellFeature {
  CellId id = 0;
  std::vector<std::pair<std::string, PropertyValue>> properties;
};

/// FeatureCollection of cell polygons with a top-level "metadata" object.
void write_cells_geojson(std::span<const CellFeature> features, const Grid& grid, const Projection& proj,
                         const Metadata& metadata, std::ostream& out);

}  // namespace hydronoise
