// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "hydronoise/ingest.hpp"

using namespace hydronoise;

namespace {

const Projection& utm33() {
  static const auto p = Projection::from_epsg(32633);
  return p;
}

std::vector<PortArea> square_port(Point c, double h) {
  return {{"P", Polygon({{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}})}};
}

AisRecord rec(std::int64_t t, Point p, std::optional<double> sog = std::nullopt) {
  return {Mmsi{1}, Instant{t}, utm33().inverse(p), sog, std::nullopt};
}

TPoint line(std::vector<std::pair<std::int64_t, Point>> pts) {
  std::vector<Sample<Point>> s;
  for (auto [t, p] : pts) s.push_back({Instant{t}, p});
  return TPoint(std::move(s), Interpolation::linear);
}

}  // namespace

TEST_CASE("parse_ais") {
  std::istringstream in(
      "mmsi,timestamp_iso8601,lon,lat,sog_kn,cog_deg\n"
      "247000001,2020-06-01T00:00:00Z,13.5,43.6,5.2,90\n"
      "247000001,2020-06-01T00:01:00Z,13.51,43.6,,\n"
      "247000002,2020-06-01T00:00:30,13.6,43.7,3.1,180.5\n");
  auto r = parse_ais(in);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.issues.empty());
  CHECK(r.rows[0].mmsi == Mmsi{247000001});
  CHECK(*r.rows[0].sog_kn == 5.2);
  CHECK_FALSE(r.rows[1].sog_kn);
  CHECK_FALSE(r.rows[1].cog_deg);
  CHECK(r.rows[2].t.epoch_seconds == 1590969630);

  SUBCASE("bad rows are reported") {
    std::string text = "mmsi,timestamp_iso8601,lon,lat,sog_kn,cog_deg\n";
    for (int i = 0; i < 20; ++i) text += "1,2020-06-01T00:00:" + std::string(i < 10 ? "0" : "") + std::to_string(i) + ",13,43,,\n";
    text += "1,not-a-time,13,43,,\n";
    std::istringstream s(text);
    auto res = parse_ais(s);
    CHECK(res.rows.size() == 20);
    REQUIRE(res.issues.size() == 1);
    CHECK(res.issues[0].line == 22);
  }

  SUBCASE("too many bad rows throw") {
    std::istringstream s("mmsi,timestamp_iso8601,lon,lat,sog_kn,cog_deg\n1,x,13,43,,\n1,2020-06-01T00:00:00,13,43,,\n");
    CHECK_THROWS_AS(parse_ais(s), IngestError);
  }

  SUBCASE("empty input throws") {
    std::istringstream s("");
    CHECK_THROWS_AS(parse_ais(s), IngestError);
  }
}

TEST_CASE("parse_registry") {
  std::istringstream in("mmsi,name,loa_m,engine_hp,gear\n247000001,ALFA,23.5,590.9,OTB\n247000002,BRAVO,14,215.7,PTM\n");
  auto r = parse_registry(in);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].name == "ALFA");
  CHECK(r.rows[0].engine_hp == doctest::Approx(590.9));
  CHECK(r.rows[1].gear == "PTM");
}

TEST_CASE("parse_ports") {
  std::istringstream in(
      R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{"name":"Ancona"},)"
      R"("geometry":{"type":"Polygon","coordinates":[[[13.49,43.61],[13.51,43.61],[13.51,43.63],[13.49,43.63],[13.49,43.61]]]}}]})");
  auto ports = parse_ports(in, utm33());
  REQUIRE(ports.size() == 1);
  CHECK(ports[0].name == "Ancona");
  const auto ancona = utm33().forward({13.5, 43.62});
  CHECK(in_any_port(ancona, ports));
  CHECK_FALSE(in_any_port(utm33().forward({13.6, 43.7}), ports));
}

TEST_CASE("group_by_vessel sorts and drops duplicates") {
  std::vector<AisRecord> v{
      {Mmsi{2}, Instant{30}, {}, 1.0, {}},
      {Mmsi{1}, Instant{20}, {}, 1.0, {}},
      {Mmsi{1}, Instant{10}, {}, 2.0, {}},
      {Mmsi{1}, Instant{20}, {}, 3.0, {}},
  };
  std::size_t dropped = 0;
  auto g = group_by_vessel(v, &dropped);
  CHECK(dropped == 1);
  REQUIRE(g.size() == 2);
  REQUIRE(g[Mmsi{1}].size() == 2);
  CHECK(g[Mmsi{1}][0].t.epoch_seconds == 10);
  CHECK(*g[Mmsi{1}][1].sog_kn == 1.0);
}

TEST_CASE("split_trips") {
  const Point port{380000, 4830000};
  const auto ports = square_port(port, 500);
  const Point sea{385000, 4835000};
  std::vector<AisRecord> r{
      rec(0, port, 0.0),          rec(60, sea, 9.0),           rec(120, sea + Point{100, 0}, 9.0),
      rec(180, port, 0.0),        // in port, then a long silence
      rec(180 + 4000, port, 0.0), rec(180 + 4060, sea, 9.0),  rec(180 + 4120, sea, 9.0),
  };
  auto res = split_trips(r, ports, 1800, utm33());
  REQUIRE(res.trips.size() == 2);
  CHECK(res.trips[0].trip_id == 1);
  CHECK(res.trips[1].trip_id == 2);
  CHECK(res.trips[0].trip.size() == 4);
  CHECK(res.trips[1].trip.size() == 3);
  CHECK(res.stats.input_records == 7);
  CHECK(res.stats.records_in_trips == 7);

  SUBCASE("a long gap at sea does not cut") {
    std::vector<AisRecord> s{rec(0, sea, 9.0), rec(5000, sea + Point{10, 0}, 9.0)};
    CHECK(split_trips(s, ports, 1800, utm33()).trips.size() == 1);
  }

  SUBCASE("singletons are dropped") {
    std::vector<AisRecord> s{rec(0, port, 0.0), rec(5000, port, 0.0), rec(5060, sea, 9.0)};
    auto out = split_trips(s, ports, 1800, utm33());
    CHECK(out.trips.size() == 1);
    CHECK(out.stats.dropped_singletons == 1);
  }
}

TEST_CASE("build_speed") {
  auto p = line({{0, {0, 0}}, {3600, {1852, 0}}});
  std::vector<std::optional<double>> none(2);
  auto s = build_speed(p, none);
  REQUIRE(s.size() == 2);
  CHECK(s[0].value == doctest::Approx(1.0));
  CHECK(s[1].value == doctest::Approx(1.0));

  std::vector<std::optional<double>> some{4.0, std::nullopt};
  auto m = build_speed(p, some);
  CHECK(m[0].value == 4.0);
  CHECK(m[1].value == doctest::Approx(1.0));

  auto single = build_speed(line({{0, {0, 0}}}), std::vector<std::optional<double>>(1));
  CHECK(single[0].value == 0.0);

  CHECK(path_length(line({{0, {0, 0}}, {10, {3, 4}}, {20, {3, 10}}})) == doctest::Approx(11.0));
}

TEST_CASE("synchronize_trip") {
  Trip t;
  t.trip_id = 1;
  t.mmsi = Mmsi{1};
  t.trip = line({{30, {0, 0}}, {270, {2400, 0}}});
  t.speed = TFloat({{Instant{30}, 10.0}, {Instant{270}, 10.0}}, Interpolation::linear);
  t.activity = TInt({{Instant{30}, 4}, {Instant{270}, 4}}, Interpolation::step);
  auto s = synchronize_trip(t, 60, Instant{0});
  REQUIRE(s);
  CHECK(s->trip.size() == 4);
  CHECK(s->speed.size() == 4);
  CHECK(s->activity.size() == 4);
  CHECK(s->trip[0].t.epoch_seconds == 60);
  CHECK(s->trip[0].value.x == doctest::Approx(300));
  CHECK(s->duration_s == 180);
  CHECK(s->length_m == doctest::Approx(1800));

  Trip short_trip = t;
  short_trip.trip = line({{61, {0, 0}}, {119, {10, 0}}});
  short_trip.speed = TFloat({{Instant{61}, 1.0}, {Instant{119}, 1.0}}, Interpolation::linear);
  short_trip.activity = TInt({{Instant{61}, 4}, {Instant{119}, 4}}, Interpolation::step);
  CHECK_FALSE(synchronize_trip(short_trip, 60, Instant{0}));
}
