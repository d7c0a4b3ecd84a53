// SPDX-License-Identifier: Apache-2.0
//
// Per-cell products derived from a finalized noise field.
#pragma once

#include <bitset>
#include <chrono>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hydronoise/engine.hpp"
#include "hydronoise/enrich.hpp"

namespace hydronoise {

/// Inclusive range of UTC calendar days.
struct DatePeriod {
  std::chrono::sys_days first;
  std::chrono::sys_days last;

  int days() const { return static_cast<int>((last - first).count()) + 1; }
};

/// Bit i set = weekday i kept (Monday = 0).
using WeekdayMask = std::bitset<7>;

/// Parses "mon,tue,..." or "mon-thu" (case-insensitive).
WeekdayMask parse_weekdays(const std::string& text);

struct CellStats {
  CellId cell_id = 0;
  std::optional<double> avg_excess_db;
  int active_days = 0;
  int total_days = 0;
  double persistence = 0.0;
  std::optional<double> mean_daily_peak_db;
};

/// One entry per id in `cells`, in the same order. A day is active for a cell
/// when any of its minutes has rl > 0 dB. Throws std::invalid_argument when
/// the period is empty, no day passes the filter, or the period leaves the
/// field's window.
std::vector<CellStats> cell_stats(const NoiseField& field, std::span<const CellId> cells, DatePeriod period,
                                  std::optional<WeekdayMask> day_filter = std::nullopt);

enum class BandScheme { average, peak };

struct BivariateClass {
  BandScheme scheme = BandScheme::average;
  int noise_band = 0;        ///< 0..2 (average) or 0..3 (peak)
  int persistence_band = 0;  ///< 0: <25%, 1: 25-50%, 2: >=50%

  friend auto operator<=>(const BivariateClass&, const BivariateClass&) = default;
};

/// Lower bounds inclusive. A cell without active days lands in band 0.
BivariateClass bivariate_classify(const CellStats& stats, BandScheme scheme);

std::string noise_band_label(BandScheme scheme, int band);
std::string persistence_band_label(int band);

struct TripFilter {
  std::optional<std::pair<double, double>> engine_hp;  ///< closed range
  std::optional<std::pair<double, double>> loa_m;      ///< closed range
  std::set<Mmsi> mmsi;                                 ///< empty = any
  std::set<std::string> gear;                          ///< empty = any
  std::optional<Activity> activity;                    ///< trip has at least one instant with it

  bool empty() const {
    return !engine_hp && !loa_m && mmsi.empty() && gear.empty() && !activity;
  }
};

/// Trips matching every supplied predicate. Vessel attributes come from the
/// registry; a trip whose vessel is unknown fails any attribute predicate.
std::vector<EnrichedTrip> filter_trips(std::span<const EnrichedTrip> trips, const Registry& registry,
                                       const TripFilter& filter);

/// Fraction of cells per class.
std::map<BivariateClass, double> area_summary(std::span<const CellStats> stats, std::span<const BivariateClass> classes);

/// CSV `cell_id,avg_excess_db,active_days,total_days,persistence,mean_daily_peak_db,noise_band,persistence_band`.
void export_stats_csv(std::span<const CellStats> stats, BandScheme scheme, std::ostream& out);

}  // namespace hydronoise
