// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace hydronoise {

namespace {

class SyntheticSeabed final : public Bathymetry {
 public:
  SyntheticSeabed(Extent extent, double min_depth, double max_depth, bool island)
      : extent_(extent), min_depth_(min_depth), max_depth_(max_depth), island_(island) {}

  std::optional<double> depth_at(Point p) const override {
    const double w = extent_.max_x - extent_.min_x;
    const double h = extent_.max_y - extent_.min_y;
    if (island_) {
      const Point c{extent_.min_x + 0.7 * w, extent_.min_y + 0.7 * h};
      if (distance(p, c) < 0.06 * std::min(w, h)) {
        return -5.0;
      }
    }
    const double u = std::clamp((p.x - extent_.min_x) / w, 0.0, 1.0);
    return min_depth_ + (max_depth_ - min_depth_) * u;
  }

  Extent extent() const override { return extent_; }

 private:
  Extent extent_;
  double min_depth_;
  double max_depth_;
  bool island_;
};

constexpr std::int64_t kStepS = 60;

}  // namespace

Scenario make_scenario(const ScenarioOptions& o) {
  if (o.n_vessels < 0 || o.duration_s < 0) {
    throw std::invalid_argument("scenario needs non-negative vessel count and duration");
  }
  GridSpec spec{o.origin, o.n_cols, o.n_rows, o.cell_size, o.epsg};
  spec.validate();
  const Extent ext = spec.extent();
  SyntheticSeabed seabed(ext, o.min_depth_m, o.max_depth_m, o.island);
  Grid grid = build_grid(spec, seabed);

  FrequencyTable table = FrequencyTable::defaults();
  std::mt19937_64 rng(o.seed);
  auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };

  const TimeWindow window{o.start, o.start + o.duration_s};

  // Stations near the four corners, one L90 value per (frequency, month).
  std::set<YearMonth> months;
  for (auto day = day_of(window.begin); day <= day_of(window.end); day += std::chrono::days{1}) {
    months.insert(year_month_of(start_of(day)));
  }
  std::vector<HydrophoneStation> stations;
  const double w = ext.max_x - ext.min_x;
  const double h = ext.max_y - ext.min_y;
  for (int k = 0; k < 4; ++k) {
    HydrophoneStation s;
    s.name = "S" + std::to_string(k + 1);
    s.position = {ext.min_x + (k % 2 == 0 ? 0.15 : 0.85) * w, ext.min_y + (k < 2 ? 0.15 : 0.85) * h};
    for (int f : o.frequencies) {
      for (const auto& ym : months) {
        s.l90_db[{f, ym}] = uniform(o.ambient_min_db, o.ambient_max_db);
      }
    }
    stations.push_back(std::move(s));
  }
  for (int f : o.frequencies) {
    for (const auto& ym : months) {
      idw_ambient(stations, grid, f, ym);
    }
  }

  Registry registry;
  std::vector<EnrichedTrip> trips;
  const double margin = 0.1;
  const std::int64_t n_steps = o.duration_s / kStepS;
  for (int v = 0; v < o.n_vessels; ++v) {
    VesselProfile profile;
    profile.mmsi = static_cast<Mmsi>(247000000u + static_cast<std::uint32_t>(v));
    profile.name = "SYN" + std::to_string(v + 1);
    profile.engine_hp = uniform(o.min_engine_hp, o.max_engine_hp);
    profile.loa_m = 12.0 + profile.engine_hp / 40.0;
    profile.gear = v % 3 == 0 ? "OTB" : (v % 3 == 1 ? "TBB" : "PTM");
    registry[profile.mmsi] = profile;

    Point p{ext.min_x + uniform(margin, 1.0 - margin) * w, ext.min_y + uniform(margin, 1.0 - margin) * h};
    double heading = uniform(0.0, 2.0 * std::numbers::pi);
    bool fishing = uniform(0.0, 1.0) < 0.5;
    std::int64_t leg_left = static_cast<std::int64_t>(uniform(15.0, 40.0));
    double speed_kn = fishing ? uniform(2.0, 4.0) : uniform(8.0, 11.0);

    std::vector<Sample<Point>> pos;
    std::vector<Sample<double>> speed;
    std::vector<Sample<int>> activity;
    for (std::int64_t i = 0; i <= n_steps; ++i) {
      const Instant t = window.begin + i * kStepS;
      pos.push_back({t, p});
      speed.push_back({t, speed_kn});
      activity.push_back({t, static_cast<int>(fishing ? Activity::fishing : Activity::navigation)});

      if (--leg_left <= 0) {
        fishing = !fishing;
        leg_left = static_cast<std::int64_t>(uniform(15.0, 40.0));
        speed_kn = fishing ? uniform(2.0, 4.0) : uniform(8.0, 11.0);
      }
      heading += uniform(-0.15, 0.15);
      const double step = speed_kn * kMetresPerNauticalMile / 3600.0 * kStepS;
      Point next{p.x + step * std::cos(heading), p.y + step * std::sin(heading)};
      const double lo_x = ext.min_x + 0.02 * w, hi_x = ext.max_x - 0.02 * w;
      const double lo_y = ext.min_y + 0.02 * h, hi_y = ext.max_y - 0.02 * h;
      if (next.x < lo_x || next.x > hi_x) {
        heading = std::numbers::pi - heading;
        next.x = std::clamp(next.x, lo_x, hi_x);
      }
      if (next.y < lo_y || next.y > hi_y) {
        heading = -heading;
        next.y = std::clamp(next.y, lo_y, hi_y);
      }
      p = next;
    }

    Trip trip;
    trip.trip_id = 1;
    trip.mmsi = profile.mmsi;
    trip.trip = TPoint(std::move(pos), Interpolation::linear);
    trip.speed = TFloat(std::move(speed), Interpolation::linear);
    trip.activity = TInt(std::move(activity), Interpolation::step);
    trip.length_m = path_length(trip.trip);
    trip.duration_s = o.duration_s;

    SourceProfile source{profile.mmsi, {}};
    for (int f : o.frequencies) {
      source.sl0_db[f] = compute_sl0(profile.engine_hp, f, table);
    }
    trips.push_back({std::move(trip), std::move(source)});
  }

  return Scenario{std::move(grid), std::move(registry), std::move(trips), std::move(stations), window, table};
}

}  // namespace hydronoise
