// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hydronoise/geometry.hpp"

using namespace hydronoise;

namespace {

struct Case {
  int epsg;
  LonLat ll;
  Point xy;
};

// Reference values from an independent PROJ run.
const Case kCases[] = {
    {32633, {13.262, 44.78258}, {362501.7604864432, 4960267.494146494}},
    {32633, {15.66, 43.65}, {553225.0386151992, 4833211.911187215}},
    {32633, {9.0, 0.5}, {-168856.20148326026, 55571.50548136996}},
    {3035, {13.262, 44.78258}, {4579553.04029025, 2413557.6627809736}},
    {3035, {10.0, 52.0}, {4321000.0, 3210000.0}},
    {3035, {-5.0, 40.0}, {3042765.835795318, 2005271.675256762}},
    {32733, {14.5, -20.25}, {447779.94607960596, 7760774.434301202}},
    {32610, {-123.1, 49.3}, {492729.7776251242, 5460811.038490374}},
};

}  // namespace

TEST_CASE("forward projection matches reference within 20 um") {
  for (const auto& c : kCases) {
    CAPTURE(c.epsg);
    const auto p = Projection::from_epsg(c.epsg).forward(c.ll);
    CHECK(std::abs(p.x - c.xy.x) < 2e-5);
    CHECK(std::abs(p.y - c.xy.y) < 2e-5);
  }
}

TEST_CASE("inverse projection round trips") {
  for (const auto& c : kCases) {
    CAPTURE(c.epsg);
    const auto proj = Projection::from_epsg(c.epsg);
    const auto ll = proj.inverse(c.xy);
    CHECK(std::abs(ll.lon - c.ll.lon) < 1e-9);
    CHECK(std::abs(ll.lat - c.ll.lat) < 1e-9);
  }
}

TEST_CASE("Ancona in UTM 33N") {
  const auto p = Projection::from_epsg(32633).forward({13.5, 43.62});
  CHECK(std::abs(p.x - 378973.25) < 0.01);
  CHECK(std::abs(p.y - 4830761.54) < 0.01);
}

TEST_CASE("unsupported codes throw") {
  CHECK_THROWS_AS(Projection::from_epsg(4326), std::invalid_argument);
  CHECK_THROWS_AS(Projection::from_epsg(32661), std::invalid_argument);
  CHECK(Projection::from_epsg(32760).epsg() == 32760);
}

TEST_CASE("polygon") {
  Polygon sq({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}});
  CHECK(sq.ring().size() == 4);
  CHECK(sq.contains({5, 5}));
  CHECK_FALSE(sq.contains({15, 5}));
  CHECK_FALSE(sq.contains({-0.001, 5}));
  CHECK(sq.bounds().max_x == 10);

  Polygon ell({{0, 0}, {10, 0}, {10, 4}, {4, 4}, {4, 10}, {0, 10}});
  CHECK(ell.contains({2, 8}));
  CHECK_FALSE(ell.contains({8, 8}));

  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Polygon({{0, 0}, {10, 10}, {10, 0}, {0, 10}}), std::invalid_argument);
}

TEST_CASE("extent") {
  Extent e{0, 0, 10, 10};
  CHECK(e.contains(Point{10, 10}));
  CHECK(e.contains(Extent{1, 1, 9, 9}));
  CHECK_FALSE(e.contains(Extent{1, 1, 11, 9}));
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
}
