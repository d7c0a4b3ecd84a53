// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/io.hpp"

#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>

namespace hydronoise {

using nlohmann::json;

namespace {

template <class T, class Encode>
json encode_temporal(const Temporal<T>& tv, Encode&& encode) {
  json t = json::array(), v = json::array();
  for (const auto& s : tv.samples()) {
    t.push_back(s.t.epoch_seconds);
    encode(v, s.value);
  }
  return {{"t", std::move(t)}, {"v", std::move(v)}};
}

template <class T, class Decode>
Temporal<T> decode_temporal(const json& j, Interpolation mode, Decode&& decode) {
  const auto& t = j.at("t");
  const auto& v = j.at("v");
  if (!t.is_array() || !v.is_array()) {
    throw std::runtime_error("temporal value needs 't' and 'v' arrays");
  }
  std::vector<Sample<T>> samples;
  samples.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    samples.push_back({Instant{t[i].get<std::int64_t>()}, decode(v, i)});
  }
  if (samples.empty()) {
    return {};
  }
  return Temporal<T>(std::move(samples), mode);
}

}  // namespace

void write_trips_json(std::span<const EnrichedTrip> trips, const Metadata& metadata, std::ostream& out) {
  json doc;
  doc["metadata"] = metadata;
  json arr = json::array();
  for (const auto& et : trips) {
    const Trip& t = et.trip;
    json sl0 = json::object();
    for (const auto& [f, v] : et.source.sl0_db) sl0[std::to_string(f)] = v;
    arr.push_back({
        {"mmsi", static_cast<std::uint32_t>(t.mmsi)},
        {"trip_id", t.trip_id},
        {"length_m", t.length_m},
        {"duration_s", t.duration_s},
        {"sl0_db", std::move(sl0)},
        {"position", encode_temporal(t.trip, [](json& v, Point p) { v.push_back({p.x, p.y}); })},
        {"speed_kn", encode_temporal(t.speed, [](json& v, double s) { v.push_back(s); })},
        {"activity", encode_temporal(t.activity, [](json& v, int a) { v.push_back(a); })},
    });
  }
  doc["trips"] = std::move(arr);
  out << doc.dump() << '\n';
}

std::vector<EnrichedTrip> read_trips_json(std::istream& in, Metadata* metadata) {
  std::vector<EnrichedTrip> trips;
  try {
    const json doc = json::parse(in);
    if (metadata && doc.contains("metadata")) {
      *metadata = doc["metadata"].get<Metadata>();
    }
    for (const auto& j : doc.at("trips")) {
      EnrichedTrip et;
      Trip& t = et.trip;
      t.mmsi = static_cast<Mmsi>(j.at("mmsi").get<std::uint32_t>());
      t.trip_id = j.at("trip_id").get<int>();
      t.length_m = j.at("length_m").get<double>();
      t.duration_s = j.at("duration_s").get<std::int64_t>();
      t.trip = decode_temporal<Point>(j.at("position"), Interpolation::linear, [](const json& v, std::size_t i) {
        return Point{v[i].at(0).get<double>(), v[i].at(1).get<double>()};
      });
      t.speed = decode_temporal<double>(j.at("speed_kn"), Interpolation::linear,
                                        [](const json& v, std::size_t i) { return v[i].get<double>(); });
      t.activity = decode_temporal<int>(j.at("activity"), Interpolation::step,
                                        [](const json& v, std::size_t i) { return v[i].get<int>(); });
      et.source.mmsi = t.mmsi;
      for (const auto& [f, v] : j.at("sl0_db").items()) {
        et.source.sl0_db[std::stoi(f)] = v.get<double>();
      }
      trips.push_back(std::move(et));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed trips archive: ") + e.what());
  }
  return trips;
}

std::array<LonLat, 5> cell_ring_lonlat(const Grid& grid, const Projection& proj, CellId id) {
  const auto c = grid.corners_of(id);
  return {proj.inverse(c[0]), proj.inverse(c[1]), proj.inverse(c[2]), proj.inverse(c[3]), proj.inverse(c[0])};
}

void write_cells_geojson(std::span<const CellFeature> features, const Grid& grid, const Projection& proj,
                         const Metadata& metadata, std::ostream& out) {
  json fc;
  fc["type"] = "FeatureCollection";
  fc["metadata"] = metadata;
  json arr = json::array();
  for (const auto& f : features) {
    json ring = json::array();
    for (const auto& ll : cell_ring_lonlat(grid, proj, f.id)) ring.push_back({ll.lon, ll.lat});
    json props = json::object();
    props["cell_id"] = f.id;
    for (const auto& [k, v] : f.properties) {
      std::visit(
          [&](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>) {
              props[k] = nullptr;
            } else {
              props[k] = x;
            }
          },
          v);
    }
    arr.push_back({{"type", "Feature"},
                   {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({std::move(ring)})}}},
                   {"properties", std::move(props)}});
  }
  fc["features"] = std::move(arr);
  out << fc.dump() << '\n';
}

}  // namespace hydronoise
