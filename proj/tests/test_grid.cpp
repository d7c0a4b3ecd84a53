// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "hydronoise/grid.hpp"

using namespace hydronoise;

namespace {

class Flat final : public Bathymetry {
 public:
  Flat(Extent e, double depth) : e_(e), depth_(depth) {}
  std::optional<double> depth_at(Point p) const override {
    if (p.x < 2000 && p.y < 1000) return -5.0;  // land strip
    return depth_;
  }
  Extent extent() const override { return e_; }

 private:
  Extent e_;
  double depth_;
};

class Uniform final : public Bathymetry {
 public:
  explicit Uniform(Extent e) : e_(e) {}
  std::optional<double> depth_at(Point) const override { return 42.0; }
  Extent extent() const override { return e_; }

 private:
  Extent e_;
};

GridSpec spec(int cols, int rows, Point origin = {0, 0}) { return {origin, cols, rows, 1000.0, 32633}; }

HydrophoneStation station(std::string name, Point p, double l90_db) {
  HydrophoneStation s{std::move(name), p, {}};
  s.l90_db[{63, YearMonth{2020, 6}}] = l90_db;
  return s;
}

}  // namespace

TEST_CASE("build_grid on a uniform 2x2 sea") {
  const auto s = spec(2, 2, {1000, 2000});
  auto g = build_grid(s, Uniform(s.extent()));
  REQUIRE(g.size() == 4);
  for (const auto& c : g.cells()) {
    CHECK(c.depth == 42.0);
    const double ox = c.centroid.x - 1000, oy = c.centroid.y - 2000;
    CHECK((ox == 500 || ox == 1500));
    CHECK((oy == 500 || oy == 1500));
    CHECK(g.cell_id_at(c.centroid) == c.id);
    CHECK(g.centroid_of(c.id) == c.centroid);
    REQUIRE(g.sea_index(c.id));
    CHECK(g.cells()[*g.sea_index(c.id)].id == c.id);
  }
  CHECK_FALSE(g.cell_id_at({999, 2500}));
  CHECK_FALSE(g.cell_id_at({3001, 2500}));
  const auto k = g.corners_of(g.cells()[0].id);
  CHECK(k[2].x - k[0].x == 1000);
  CHECK(k[2].y - k[0].y == 1000);
}

TEST_CASE("land cells are dropped and coverage is checked") {
  const auto s = spec(4, 3);
  auto g = build_grid(s, Flat(s.extent(), 30.0));
  CHECK(g.size() == 12 - 2);
  const auto land = g.cell_id_at({500, 500});
  REQUIRE(land);
  CHECK_FALSE(g.sea_index(*land));

  CHECK_THROWS_AS(build_grid(s, Flat({0, 0, 3000, 3000}, 30.0)), GridError);
  CHECK(spec(250, 180).cell_count() == 45000);
  CHECK_THROWS(GridSpec{{0, 0}, 0, 3, 1000.0, 32633}.validate());
  CHECK(spec(3, 3).hash() != spec(3, 4).hash());
  CHECK(spec(3, 3).hash() == spec(3, 3).hash());
}

TEST_CASE("raster bathymetry") {
  std::istringstream in(
      "ncols 3\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 100\nNODATA_value -9999\n"
      "10 20 -9999\n"
      "30 40 50\n");
  auto r = RasterBathymetry::from_ascii_grid(in);
  CHECK(r.extent().max_x == 300);
  CHECK(r.extent().max_y == 200);
  CHECK(*r.depth_at({50, 150}) == 10);   // north row first
  CHECK(*r.depth_at({150, 50}) == 40);
  CHECK_FALSE(r.depth_at({250, 150}));
  CHECK_FALSE(r.depth_at({350, 50}));
}

TEST_CASE("point cloud bathymetry") {
  PointCloudBathymetry b({{{0, 0}, 10.0}, {{1000, 0}, 20.0}, {{0, 1000}, 30.0}});
  CHECK(*b.depth_at({100, 100}) == 10.0);
  CHECK(*b.depth_at({900, 50}) == 20.0);
  CHECK(*b.depth_at({10, 800}) == 30.0);

  const auto proj = Projection::from_epsg(32633);
  std::istringstream in("lon,lat,depth_m\n13.5,43.62,25\n13.6,43.7,40\n");
  auto c = PointCloudBathymetry::from_csv(in, proj);
  CHECK(*c.depth_at(proj.forward({13.5, 43.62})) == 25.0);
}

TEST_CASE("l90") {
  const double flat[] = {60, 60, 60};
  CHECK(l90(flat) == 60.0);
  std::vector<double> ten{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
  CHECK(l90(ten) == doctest::Approx(1.9));
  const double one[] = {73.25};
  CHECK(l90(one) == 73.25);
  CHECK_THROWS(l90(std::span<const double>{}));

  std::vector<double> shifted = ten;
  for (auto& v : shifted) v += 55.5;
  CHECK(l90(shifted) == doctest::Approx(l90(ten) + 55.5));
}

TEST_CASE("idw ambient") {
  const auto s = spec(10, 10);
  auto g = build_grid(s, Uniform(s.extent()));
  const YearMonth jun{2020, 6};

  SUBCASE("one station everywhere") {
    std::vector<HydrophoneStation> st{station("A", {2500, 2500}, 64.0)};
    const auto& a = idw_ambient(st, g, 63, jun);
    CHECK(std::all_of(a.begin(), a.end(), [](double v) { return v == 64.0; }));
    CHECK(g.ambient(63, jun) == &a);
  }

  SUBCASE("equidistant cell gets the mean and station cells are exact") {
    std::vector<HydrophoneStation> st{station("A", {1500, 4500}, 60.78), station("B", {7500, 4500}, 82.62)};
    const auto& a = idw_ambient(st, g, 63, jun);
    const auto mid = *g.sea_index(*g.cell_id_at({4500, 4500}));
    CHECK(a[mid] == doctest::Approx((60.78 + 82.62) / 2));
    CHECK(a[*g.sea_index(*g.cell_id_at({1500, 4500}))] == 60.78);
    CHECK(a[*g.sea_index(*g.cell_id_at({7200, 4100}))] == 82.62);
    CHECK(*std::min_element(a.begin(), a.end()) >= 60.78);
    CHECK(*std::max_element(a.begin(), a.end()) <= 82.62);
  }

  SUBCASE("no data for the key") {
    std::vector<HydrophoneStation> st{station("A", {2500, 2500}, 64.0)};
    CHECK_THROWS_AS(idw_ambient(st, g, 125, jun), GridError);
    CHECK_THROWS_AS(idw_ambient(st, g, 63, YearMonth{2020, 7}), GridError);
    CHECK(g.ambient(125, jun) == nullptr);
  }
}

TEST_CASE("parse_stations") {
  const auto proj = Projection::from_epsg(32633);
  std::istringstream in(
      "name,lon,lat,frequency_hz,month,l90_db\n"
      "Ancona,13.5,43.62,63,2020-06,60.78\n"
      "Ancona,13.5,43.62,125,2020-06,62.4\n"
      "Zirje,15.66,43.65,63,2020-06,82.62\n");
  auto st = parse_stations(in, proj);
  REQUIRE(st.size() == 2);
  const auto& anc = st[0].name == "Ancona" ? st[0] : st[1];
  CHECK(anc.l90_db.size() == 2);
  CHECK(anc.l90_db.at({63, YearMonth{2020, 6}}) == 60.78);
  CHECK(std::abs(anc.position.x - 378973.25) < 0.01);
}
