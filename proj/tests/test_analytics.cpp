// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <numeric>
#include <sstream>
#include <vector>

#include "hydronoise/analytics.hpp"

using namespace hydronoise;
using std::chrono::days;

namespace {

constexpr std::uint32_t kJune1Minute = 1590969600 / 60;

DatePeriod june() { return {*parse_date("2020-06-01"), *parse_date("2020-06-30")}; }

TimeWindow june_window() { return {Instant{1590969600}, Instant{1593561600 - 60}}; }

NoiseField field(std::vector<FieldEntry> e) {
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) {
    return std::tie(a.epoch_minute, a.cell_id) < std::tie(b.epoch_minute, b.cell_id);
  });
  return NoiseField::from_levels(63, 1, june_window(), std::move(e));
}

std::uint32_t minute(int day, int minute_of_day) { return kJune1Minute + day * 1440 + minute_of_day; }

CellStats stats(std::optional<double> avg, double persistence, std::optional<double> peak = std::nullopt) {
  CellStats s;
  s.avg_excess_db = avg;
  s.persistence = persistence;
  s.mean_daily_peak_db = peak;
  s.active_days = avg ? 1 : 0;
  return s;
}

EnrichedTrip trip_of(std::uint32_t mmsi, std::vector<int> acts) {
  EnrichedTrip e;
  e.trip.mmsi = Mmsi{mmsi};
  e.trip.trip_id = 1;
  std::vector<Sample<int>> a;
  for (std::size_t i = 0; i < acts.size(); ++i) a.push_back({Instant{static_cast<std::int64_t>(60 * i)}, acts[i]});
  e.trip.activity = TInt(std::move(a), Interpolation::step);
  e.source.mmsi = Mmsi{mmsi};
  return e;
}

}  // namespace

TEST_CASE("weekday parsing") {
  CHECK(parse_weekdays("mon-thu") == WeekdayMask("0001111"));
  CHECK(parse_weekdays("Sat,SUN") == WeekdayMask("1100000"));
  CHECK(parse_weekdays("fri-mon") == WeekdayMask("1110001"));
  CHECK_THROWS(parse_weekdays("funday"));
  CHECK(june().days() == 30);
}

TEST_CASE("cell_stats basics") {
  auto f = field({{7, minute(3, 100), 6.0}});
  const CellId ids[] = {7, 8};
  auto s = cell_stats(f, ids, june());
  REQUIRE(s.size() == 2);
  CHECK(s[0].cell_id == 7);
  CHECK(s[0].active_days == 1);
  CHECK(s[0].total_days == 30);
  CHECK(s[0].persistence == doctest::Approx(1.0 / 30));
  CHECK(*s[0].avg_excess_db == 6.0);
  CHECK(*s[0].mean_daily_peak_db == 6.0);
  CHECK(s[1].active_days == 0);
  CHECK_FALSE(s[1].avg_excess_db);
  CHECK_FALSE(s[1].mean_daily_peak_db);
}

TEST_CASE("only positive minutes count") {
  auto f = field({{1, minute(0, 0), -3.0}, {1, minute(0, 1), 4.0}, {1, minute(0, 2), 8.0}, {1, minute(1, 0), 10.0},
                  {2, minute(0, 5), -1.0}});
  const CellId ids[] = {1, 2};
  auto s = cell_stats(f, ids, june());
  CHECK(s[0].active_days == 2);
  CHECK(*s[0].avg_excess_db == doctest::Approx((4.0 + 8.0 + 10.0) / 3));
  CHECK(*s[0].mean_daily_peak_db == doctest::Approx(9.0));
  CHECK(s[1].active_days == 0);
}

TEST_CASE("Mon-Thu filter over June 2020") {
  std::vector<FieldEntry> e;
  for (int d = 0; d < 30; ++d) {
    const auto day = *parse_date("2020-06-01") + days{d};
    if (iso_weekday_index(day) > 3) continue;
    for (int m = 0; m < 1440; m += 30) e.push_back({5, minute(d, m), 10.0});
  }
  auto f = field(std::move(e));
  const CellId ids[] = {5};
  auto s = cell_stats(f, ids, june(), parse_weekdays("mon-thu"));
  CHECK(s[0].total_days == 18);
  CHECK(s[0].active_days == 18);
  CHECK(s[0].persistence == 1.0);
  CHECK(*s[0].avg_excess_db == 10.0);

  auto all = cell_stats(f, ids, june(), WeekdayMask{}.set());
  auto none = cell_stats(f, ids, june());
  CHECK(all[0].persistence == none[0].persistence);
  CHECK(all[0].total_days == none[0].total_days);
}

TEST_CASE("cell_stats errors") {
  auto f = field({});
  const CellId ids[] = {1};
  CHECK_THROWS_AS(cell_stats(f, ids, {*parse_date("2020-06-05"), *parse_date("2020-06-04")}), std::invalid_argument);
  CHECK_THROWS_AS(cell_stats(f, ids, {*parse_date("2020-06-01"), *parse_date("2020-07-02")}), std::invalid_argument);
  // 2020-06-06 and 07 are a weekend
  CHECK_THROWS_AS(cell_stats(f, ids, {*parse_date("2020-06-06"), *parse_date("2020-06-07")}, parse_weekdays("mon-fri")),
                  std::invalid_argument);
}

TEST_CASE("bivariate classes") {
  auto dark_blue = bivariate_classify(stats(3.9, 0.6), BandScheme::average);
  CHECK(dark_blue.noise_band == 0);
  CHECK(dark_blue.persistence_band == 2);
  auto dark_red = bivariate_classify(stats(8.0, 0.6), BandScheme::average);
  CHECK(dark_red.noise_band == 2);
  CHECK(dark_red.persistence_band == 2);
  CHECK(bivariate_classify(stats(4.0, 0.25), BandScheme::average).noise_band == 1);
  CHECK(bivariate_classify(stats(4.0, 0.25), BandScheme::average).persistence_band == 1);
  CHECK(bivariate_classify(stats(4.0, 0.5), BandScheme::average).persistence_band == 2);
  CHECK(bivariate_classify(stats(4.0, 0.2499), BandScheme::average).persistence_band == 0);

  CHECK(bivariate_classify(stats(1.0, 0.1, 26.0), BandScheme::peak).noise_band == 3);
  CHECK(bivariate_classify(stats(1.0, 0.1, 25.99), BandScheme::peak).noise_band == 2);
  CHECK(bivariate_classify(stats(1.0, 0.1, 10.0), BandScheme::peak).noise_band == 1);
  CHECK(bivariate_classify(stats(1.0, 0.1, 9.99), BandScheme::peak).noise_band == 0);

  auto silent = bivariate_classify(stats(std::nullopt, 0.0), BandScheme::peak);
  CHECK(silent.noise_band == 0);
  CHECK(silent.persistence_band == 0);

  CHECK(noise_band_label(BandScheme::average, 0) == "<4");
  CHECK(noise_band_label(BandScheme::peak, 3) == ">=26");
  CHECK(persistence_band_label(2) == ">=50%");
}

TEST_CASE("area summary") {
  std::vector<CellStats> s{stats(std::nullopt, 0), stats(std::nullopt, 0), stats(9.0, 0.7), stats(9.0, 0.7)};
  std::vector<BivariateClass> c;
  for (const auto& x : s) c.push_back(bivariate_classify(x, BandScheme::average));
  auto sum = area_summary(s, c);
  REQUIRE(sum.size() == 2);
  CHECK(sum.at(c[0]) == 0.5);
  CHECK(sum.at(c[2]) == 0.5);

  std::vector<CellStats> quiet(7, stats(std::nullopt, 0));
  std::vector<BivariateClass> qc(7, bivariate_classify(quiet[0], BandScheme::average));
  auto q = area_summary(quiet, qc);
  REQUIRE(q.size() == 1);
  CHECK(q.begin()->second == 1.0);
  CHECK_THROWS(area_summary(s, qc));
}

TEST_CASE("filter_trips") {
  Registry reg;
  reg[Mmsi{1}] = {Mmsi{1}, "A", 23.5, 590.9, "OTB"};
  reg[Mmsi{2}] = {Mmsi{2}, "B", 24.8, 613.0, "OTB"};
  reg[Mmsi{3}] = {Mmsi{3}, "C", 26.1, 649.9, "TBB"};
  reg[Mmsi{4}] = {Mmsi{4}, "D", 14.2, 215.7, "PTM"};
  std::vector<EnrichedTrip> trips{trip_of(1, {4, 3}), trip_of(2, {4, 4}), trip_of(3, {3}), trip_of(4, {4}),
                                  trip_of(9, {3})};

  TripFilter hp;
  hp.engine_hp = {500.0, 700.0};
  auto a = filter_trips(trips, reg, hp);
  REQUIRE(a.size() == 3);
  CHECK(a[0].trip.mmsi == Mmsi{1});
  CHECK(a[2].trip.mmsi == Mmsi{3});

  CHECK(filter_trips(trips, reg, {}).size() == trips.size());

  TripFilter lotb;
  lotb.gear = {"LOTB"};
  CHECK(filter_trips(trips, reg, lotb).empty());

  TripFilter fishing;
  fishing.activity = Activity::fishing;
  CHECK(filter_trips(trips, reg, fishing).size() == 3);

  TripFilter by_id;
  by_id.mmsi = {Mmsi{4}, Mmsi{9}};
  CHECK(filter_trips(trips, reg, by_id).size() == 2);

  TripFilter loa;
  loa.loa_m = {24.0, 30.0};
  CHECK(filter_trips(trips, reg, loa).size() == 2);
}

TEST_CASE("stats csv") {
  std::vector<CellStats> s{stats(9.0, 0.7, 12.0), stats(std::nullopt, 0)};
  s[0].cell_id = 3;
  s[1].cell_id = 4;
  std::ostringstream out;
  export_stats_csv(s, BandScheme::average, out);
  std::istringstream in(out.str());
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "cell_id,avg_excess_db,active_days,total_days,persistence,mean_daily_peak_db,noise_band,persistence_band");
  CHECK(row1.rfind("3,", 0) == 0);
  CHECK(row2.rfind("4,,0,", 0) == 0);
}
