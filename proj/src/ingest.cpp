// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/ingest.hpp"

#include <algorithm>
#include <istream>
#include <nlohmann/json.hpp>
#include <string>

#include "csv.hpp"

namespace hydronoise {

namespace {

constexpr double kMaxMalformedFraction = 0.10;

// Shared line loop for the CSV readers: checks the header, feeds each data
// line to `parse_row` and applies the malformed-row policy.
template <class Row, class ParseRow>
ParseResult<Row> read_csv(std::istream& in, std::initializer_list<std::string_view> header, const char* what,
                          ParseRow parse_row) {
  if (!in) {
    throw IngestError(std::string("cannot read ") + what + " stream");
  }
  ParseResult<Row> result;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) {
      continue;
    }
    auto fields = csv::split(line);
    if (!have_header) {
      if (!csv::header_matches(fields, header)) {
        throw IngestError(std::string(what) + ": unexpected header on line " + std::to_string(line_no));
      }
      have_header = true;
      continue;
    }
    ++data_rows;
    std::string error;
    if (fields.size() != header.size()) {
      error = "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size());
    } else if (auto row = parse_row(fields, error)) {
      result.rows.push_back(std::move(*row));
      continue;
    }
    result.issues.push_back({line_no, std::move(error)});
  }
  if (in.bad()) {
    throw IngestError(std::string("read error in ") + what + " stream");
  }
  if (!have_header || data_rows == 0) {
    throw IngestError(std::string(what) + ": no data rows");
  }
  if (static_cast<double>(result.issues.size()) > kMaxMalformedFraction * static_cast<double>(data_rows)) {
    throw IngestError(std::string(what) + ": " + std::to_string(result.issues.size()) + " of " +
                      std::to_string(data_rows) + " rows are malformed; wrong file?");
  }
  return result;
}

std::optional<Mmsi> parse_mmsi(std::string_view s) {
  auto v = csv::to_int<std::uint32_t>(s);
  if (!v || *v == 0) {
    return std::nullopt;
  }
  return Mmsi{*v};
}

std::vector<Point> ring_from_json(const nlohmann::json& ring, const Projection& proj) {
  std::vector<Point> pts;
  for (const auto& c : ring) {
    pts.push_back(proj.forward({c.at(0).get<double>(), c.at(1).get<double>()}));
  }
  return pts;
}

}  // namespace

ParseResult<AisRecord> parse_ais(std::istream& in) {
  return read_csv<AisRecord>(
      in, {"mmsi", "timestamp_iso8601", "lon", "lat", "sog_kn", "cog_deg"}, "AIS",
      [](const std::vector<std::string>& f, std::string& error) -> std::optional<AisRecord> {
        AisRecord r;
        auto mmsi = parse_mmsi(f[0]);
        auto t = parse_iso8601(f[1]);
        auto lon = csv::to_double(f[2]);
        auto lat = csv::to_double(f[3]);
        if (!mmsi) {
          error = "bad mmsi";
        } else if (!t) {
          error = "bad timestamp";
        } else if (!lon || *lon < -180.0 || *lon > 180.0) {
          error = "longitude out of range";
        } else if (!lat || *lat < -90.0 || *lat > 90.0) {
          error = "latitude out of range";
        } else {
          r.mmsi = *mmsi;
          r.t = *t;
          r.position = {*lon, *lat};
          if (!f[4].empty()) {
            r.sog_kn = csv::to_double(f[4]);
            if (!r.sog_kn || *r.sog_kn < 0.0) {
              error = "bad speed over ground";
              return std::nullopt;
            }
          }
          if (!f[5].empty()) {
            r.cog_deg = csv::to_double(f[5]);
            if (!r.cog_deg) {
              error = "bad course over ground";
              return std::nullopt;
            }
          }
          return r;
        }
        return std::nullopt;
      });
}

ParseResult<VesselProfile> parse_registry(std::istream& in) {
  return read_csv<VesselProfile>(
      in, {"mmsi", "name", "loa_m", "engine_hp", "gear"}, "registry",
      [](const std::vector<std::string>& f, std::string& error) -> std::optional<VesselProfile> {
        auto mmsi = parse_mmsi(f[0]);
        auto loa = csv::to_double(f[2]);
        auto hp = csv::to_double(f[3]);
        if (!mmsi) {
          error = "bad mmsi";
        } else if (!loa || !(*loa > 0.0)) {
          error = "length overall must be positive";
        } else if (!hp || !(*hp > 0.0)) {
          error = "engine power must be positive";
        } else {
          return VesselProfile{*mmsi, f[1], *loa, *hp, f[4]};
        }
        return std::nullopt;
      });
}

std::vector<PortArea> parse_ports(std::istream& in, const Projection& proj) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("ports: invalid GeoJSON: ") + e.what());
  }
  if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features")) {
    throw IngestError("ports: expected a GeoJSON FeatureCollection");
  }
  std::vector<PortArea> ports;
  try {
    for (const auto& feature : doc.at("features")) {
      std::string name;
      if (feature.contains("properties") && feature["properties"].is_object()) {
        name = feature["properties"].value("name", "");
      }
      const auto& geom = feature.at("geometry");
      const std::string type = geom.at("type").get<std::string>();
      if (type == "Polygon") {
        ports.push_back({name, Polygon(ring_from_json(geom.at("coordinates").at(0), proj))});
      } else if (type == "MultiPolygon") {
        for (const auto& poly : geom.at("coordinates")) {
          ports.push_back({name, Polygon(ring_from_json(poly.at(0), proj))});
        }
      } else {
        throw IngestError("ports: unsupported geometry type " + type);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("ports: malformed feature: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IngestError(std::string("ports: ") + e.what());
  }
  return ports;
}

bool in_any_port(Point p, std::span<const PortArea> ports) {
  return std::any_of(ports.begin(), ports.end(), [&](const PortArea& a) { return a.polygon.contains(p); });
}

std::map<Mmsi, std::vector<AisRecord>> group_by_vessel(std::vector<AisRecord> records,
                                                       std::size_t* duplicates_dropped) {
  std::map<Mmsi, std::vector<AisRecord>> groups;
  for (auto& r : records) {
    groups[r.mmsi].push_back(std::move(r));
  }
  std::size_t dropped = 0;
  for (auto& [_, recs] : groups) {
    std::stable_sort(recs.begin(), recs.end(), [](const AisRecord& a, const AisRecord& b) { return a.t < b.t; });
    auto last = std::unique(recs.begin(), recs.end(), [](const AisRecord& a, const AisRecord& b) { return a.t == b.t; });
    dropped += static_cast<std::size_t>(recs.end() - last);
    recs.erase(last, recs.end());
  }
  if (duplicates_dropped) {
    *duplicates_dropped = dropped;
  }
  return groups;
}

double path_length(const TPoint& trip_points) {
  double len = 0.0;
  for (std::size_t i = 1; i < trip_points.size(); ++i) {
    len += distance(trip_points[i - 1].value, trip_points[i].value);
  }
  return len;
}

TFloat build_speed(const TPoint& trip_points, std::span<const std::optional<double>> sog_kn) {
  if (trip_points.size() != sog_kn.size()) {
    throw std::invalid_argument("speed samples do not match trip instants");
  }
  const std::size_t n = trip_points.size();
  std::vector<Sample<double>> out;
  out.reserve(n);
  auto leg_speed = [&](std::size_t a, std::size_t b) {
    const double metres = distance(trip_points[a].value, trip_points[b].value);
    const double secs = static_cast<double>(trip_points[b].t - trip_points[a].t);
    return metres / kMetresPerNauticalMile / (secs / 3600.0);
  };
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    if (sog_kn[i]) {
      v = *sog_kn[i];
    } else if (n > 1) {
      v = i > 0 ? leg_speed(i - 1, i) : leg_speed(0, 1);
    }
    out.push_back({trip_points[i].t, v});
  }
  if (out.empty()) {
    return {};
  }
  return TFloat(std::move(out), Interpolation::linear);
}

SplitResult split_trips(std::span<const AisRecord> records, std::span<const PortArea> ports, std::int64_t gap_s,
                        const Projection& proj) {
  SplitResult result;
  result.stats.input_records = records.size();
  int next_id = 1;

  auto emit = [&](std::size_t begin, std::size_t end) {
    const std::size_t count = end - begin;
    if (count < 2) {
      result.stats.dropped_singletons += count;
      return;
    }
    std::vector<Sample<Point>> pts;
    std::vector<std::optional<double>> sog;
    pts.reserve(count);
    sog.reserve(count);
    for (std::size_t i = begin; i < end; ++i) {
      pts.push_back({records[i].t, proj.forward(records[i].position)});
      sog.push_back(records[i].sog_kn);
    }
    Trip trip;
    trip.trip_id = next_id++;
    trip.mmsi = records[begin].mmsi;
    trip.trip = TPoint(std::move(pts), Interpolation::linear);
    trip.speed = build_speed(trip.trip, sog);
    trip.length_m = path_length(trip.trip);
    trip.duration_s = trip.trip.end() - trip.trip.start();
    result.stats.records_in_trips += count;
    result.trips.push_back(std::move(trip));
  };

  std::size_t begin = 0;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i + 1].t - records[i].t > gap_s && in_any_port(proj.forward(records[i].position), ports)) {
      emit(begin, i + 1);
      begin = i + 1;
    }
  }
  emit(begin, records.size());
  return result;
}

std::optional<Trip> synchronize_trip(const Trip& trip, std::int64_t period_s, Instant origin) {
  Trip out = trip;
  if (trip.activity.empty()) {
    auto [pos, speed] = synchronize(period_s, origin, trip.trip, trip.speed);
    out.trip = std::move(pos);
    out.speed = std::move(speed);
  } else {
    auto [pos, speed, act] = synchronize(period_s, origin, trip.trip, trip.speed, trip.activity);
    out.trip = std::move(pos);
    out.speed = std::move(speed);
    out.activity = std::move(act);
  }
  if (out.trip.empty()) {
    return std::nullopt;
  }
  out.length_m = path_length(out.trip);
  out.duration_s = out.trip.end() - out.trip.start();
  return out;
}

}  // namespace hydronoise
