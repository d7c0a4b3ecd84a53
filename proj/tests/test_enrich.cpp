// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hydronoise/enrich.hpp"

using namespace hydronoise;

namespace {

std::vector<PortArea> port() {
  return {{"P", Polygon({{-500, -500}, {500, -500}, {500, 500}, {-500, 500}})}};
}

Trip make_trip(std::vector<std::tuple<std::int64_t, Point, double>> pts) {
  std::vector<Sample<Point>> p;
  std::vector<Sample<double>> v;
  for (auto [t, x, s] : pts) {
    p.push_back({Instant{t}, x});
    v.push_back({Instant{t}, s});
  }
  Trip trip;
  trip.trip_id = 1;
  trip.mmsi = Mmsi{7};
  trip.trip = TPoint(std::move(p), Interpolation::linear);
  trip.speed = TFloat(std::move(v), Interpolation::linear);
  return trip;
}

std::vector<int> codes(const TInt& a) {
  std::vector<int> out;
  for (const auto& s : a.samples()) out.push_back(s.value);
  return out;
}

}  // namespace

TEST_CASE("classify_activity") {
  const auto trip = make_trip({
      {0, {0, 0}, 0.0},
      {60, {100, 0}, 0.0},
      {120, {2000, 0}, 9.0},
      {180, {3000, 0}, 9.0},
      {240, {3100, 0}, 3.0},
      {300, {3200, 0}, 2.0},
      {360, {0, 0}, 9.0},
  });
  auto a = classify_activity(trip, port(), {});
  CHECK(a.interpolation() == Interpolation::step);
  CHECK(codes(a) == std::vector<int>{0, 2, 4, 3, 3, 1, 1});

  SUBCASE("band edges are inclusive") {
    auto t = make_trip({{0, {2000, 0}, 1.0}, {60, {2100, 0}, 1.0}, {120, {2200, 0}, 6.0}, {180, {2300, 0}, 6.5}});
    CHECK(codes(classify_activity(t, port(), {})) == std::vector<int>{3, 3, 4, 4});
  }
}

TEST_CASE("compute_sl0 doubling law") {
  const double a = compute_sl0(400.0, 125);
  CHECK(compute_sl0(800.0, 125) - a == doctest::Approx(3.0));
  CHECK(compute_sl0(1670.0, 63) == doctest::Approx(139.0).epsilon(1e-12));
}

TEST_CASE("attach_aspects") {
  auto trip = make_trip({{0, {0, 0}, 0.0}, {60, {2000, 0}, 9.0}, {120, {3000, 0}, 3.0}});
  Registry reg;
  reg[Mmsi{7}] = {Mmsi{7}, "X", 20.0, 835.0, "OTB"};

  std::vector<std::string> warnings;
  auto e = attach_aspects(trip, reg, port(), {}, FrequencyTable::defaults(), &warnings);
  REQUIRE(e);
  CHECK(warnings.empty());
  CHECK(e->source.mmsi == Mmsi{7});
  CHECK(e->source.sl0_db.size() == 4);
  CHECK(e->source.sl0_db.at(63) == doctest::Approx(FrequencyTable::defaults().at(63).anchor_sl0_db));
  CHECK(e->trip.activity.size() == 3);

  trip.mmsi = Mmsi{8};
  CHECK_FALSE(attach_aspects(trip, reg, port(), {}, FrequencyTable::defaults(), &warnings));
  CHECK(warnings.size() == 1);
}
