// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hydronoise/geometry.hpp"
#include "hydronoise/temporal.hpp"
#include "hydronoise/time.hpp"

namespace hydronoise {

enum class Mmsi : std::uint32_t {};

struct AisRecord {
  Mmsi mmsi{};
  Instant t;
  LonLat position;
  std::optional<double> sog_kn;
  std::optional<double> cog_deg;
};

struct VesselProfile {
  Mmsi mmsi{};
  std::string name;
  double loa_m = 0.0;
  double engine_hp = 0.0;
  std::string gear;
};

using Registry = std::unordered_map<Mmsi, VesselProfile>;

struct PortArea {
  std::string name;
  Polygon polygon;
};

/// One voyage of one vessel. `trip`, `speed` and `activity` share one instant
/// set once the trip has been synchronized.
struct Trip {
  int trip_id = 0;
  Mmsi mmsi{};
  TPoint trip;
  TFloat speed;
  TInt activity;
  double length_m = 0.0;
  std::int64_t duration_s = 0;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

template <class Row>
struct ParseResult {
  std::vector<Row> rows;
  std::vector<ParseIssue> issues;
};

/// Reads `mmsi,timestamp_iso8601,lon,lat,sog_kn,cog_deg`. Empty sog/cog
/// fields are allowed. Bad rows are skipped and reported; an empty input or
/// more than 10% bad rows throws IngestError.
ParseResult<AisRecord> parse_ais(std::istream& in);

/// Reads `mmsi,name,loa_m,engine_hp,gear`, with the same error policy as
/// parse_ais.
ParseResult<VesselProfile> parse_registry(std::istream& in);

/// GeoJSON FeatureCollection of Polygon/MultiPolygon features carrying a
/// `name` property. Outer rings only; coordinates are projected.
std::vector<PortArea> parse_ports(std::istream& in, const Projection& proj);

bool in_any_port(Point p, std::span<const PortArea> ports);

/// Groups records per vessel, sorts each group by time and drops duplicate
/// instants (the first occurrence wins).
std::map<Mmsi, std::vector<AisRecord>> group_by_vessel(std::vector<AisRecord> records,
                                                       std::size_t* duplicates_dropped = nullptr);

struct SplitStats {
  std::size_t input_records = 0;
  std::size_t records_in_trips = 0;
  std::size_t dropped_singletons = 0;
};

struct SplitResult {
  std::vector<Trip> trips;
  SplitStats stats;
};

/// Cuts one vessel's sorted, de-duplicated records into trips. A boundary
/// falls between r[i] and r[i+1] when r[i] is inside a port and the
/// transmission gap exceeds `gap_s`. Candidates with fewer than two records
/// are dropped. Trip ids count from 1 per vessel.
SplitResult split_trips(std::span<const AisRecord> records, std::span<const PortArea> ports, std::int64_t gap_s,
                        const Projection& proj);

/// Speed in knots: SOG where present, otherwise the planar distance to the
/// neighbouring position over the elapsed time. A single point gets 0.
TFloat build_speed(const TPoint& trip_points, std::span<const std::optional<double>> sog_kn);

/// Sum of planar segment lengths.
double path_length(const TPoint& trip_points);

/// Resamples position, speed and activity onto the shared lattice
/// origin + k*period and refreshes length and duration. Returns nullopt if
/// no lattice instant falls inside the trip.
std::optional<Trip> synchronize_trip(const Trip& trip, std::int64_t period_s, Instant origin);

inline constexpr double kMetresPerNauticalMile = 1852.0;

}  // namespace hydronoise
