// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/analytics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hydronoise {

namespace {

constexpr std::array<const char*, 7> kWeekdayNames = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
constexpr std::int64_t kMinutesPerDay = 1440;

int weekday_from_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
    if (name == kWeekdayNames[i]) {
      return static_cast<int>(i);
    }
  }
  throw std::invalid_argument("unknown weekday '" + name + "'");
}

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

WeekdayMask parse_weekdays(const std::string& text) {
  WeekdayMask mask;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string token = trimmed(text.substr(pos, comma - pos));
    if (token.empty()) {
      throw std::invalid_argument("empty weekday in '" + text + "'");
    }
    if (auto dash = token.find('-'); dash != std::string::npos) {
      const int a = weekday_from_name(trimmed(token.substr(0, dash)));
      const int b = weekday_from_name(trimmed(token.substr(dash + 1)));
      for (int d = a;; d = (d + 1) % 7) {
        mask.set(d);
        if (d == b) break;
      }
    } else {
      mask.set(weekday_from_name(token));
    }
    pos = comma + 1;
  }
  return mask;
}

std::vector<CellStats> cell_stats(const NoiseField& field, std::span<const CellId> cells, DatePeriod period,
                                  std::optional<WeekdayMask> day_filter) {
  if (!field.finalized()) {
    throw std::invalid_argument("cell statistics need a finalized field");
  }
  if (period.last < period.first) {
    throw std::invalid_argument("empty analysis period");
  }
  if (period.first < day_of(field.window().begin) || day_of(field.window().end) < period.last) {
    throw std::invalid_argument("analysis period " + format_date(period.first) + ".." + format_date(period.last) +
                                " is outside the field window");
  }

  const std::int64_t first_day = period.first.time_since_epoch().count();
  const int n_days = period.days();
  std::vector<char> keep(n_days, 1);
  int total_days = 0;
  for (int i = 0; i < n_days; ++i) {
    if (day_filter) {
      keep[i] = (*day_filter)[iso_weekday_index(period.first + std::chrono::days{i})];
    }
    total_days += keep[i];
  }
  if (total_days == 0) {
    throw std::invalid_argument("no day of the period passes the weekday filter");
  }

  struct Acc {
    double rl_sum = 0.0;
    std::int64_t rl_count = 0;
    int active_days = 0;
    double peak_sum = 0.0;
    std::int64_t day = std::numeric_limits<std::int64_t>::min();
    double day_max = 0.0;

    void flush() {
      if (day != std::numeric_limits<std::int64_t>::min()) {
        ++active_days;
        peak_sum += day_max;
      }
    }
  };

  CellId max_id = 0;
  for (CellId c : cells) max_id = std::max(max_id, c);
  std::vector<std::int32_t> slot(static_cast<std::size_t>(max_id) + 1, -1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    slot[cells[i]] = static_cast<std::int32_t>(i);
  }
  std::vector<Acc> acc(cells.size());

  for (const auto& e : field.entries()) {
    if (!(e.level > 0.0) || e.cell_id > max_id || slot[e.cell_id] < 0) {
      continue;
    }
    const std::int64_t day = static_cast<std::int64_t>(e.epoch_minute) / kMinutesPerDay;
    const std::int64_t offset = day - first_day;
    if (offset < 0 || offset >= n_days || !keep[offset]) {
      continue;
    }
    Acc& a = acc[slot[e.cell_id]];
    a.rl_sum += e.level;
    ++a.rl_count;
    if (a.day != day) {
      a.flush();
      a.day = day;
      a.day_max = e.level;
    } else {
      a.day_max = std::max(a.day_max, e.level);
    }
  }

  std::vector<CellStats> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Acc& a = acc[i];
    a.flush();
    CellStats& s = out[i];
    s.cell_id = cells[i];
    s.total_days = total_days;
    s.active_days = a.active_days;
    s.persistence = static_cast<double>(a.active_days) / total_days;
    if (a.rl_count > 0) {
      s.avg_excess_db = a.rl_sum / static_cast<double>(a.rl_count);
      s.mean_daily_peak_db = a.peak_sum / a.active_days;
    }
  }
  return out;
}

BivariateClass bivariate_classify(const CellStats& stats, BandScheme scheme) {
  static constexpr std::array<double, 2> kAverageEdges = {4.0, 8.0};
  static constexpr std::array<double, 3> kPeakEdges = {10.0, 18.0, 26.0};
  static constexpr std::array<double, 2> kPersistenceEdges = {0.25, 0.5};

  auto band_of = [](double v, std::span<const double> edges) {
    return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
  };
  BivariateClass c;
  c.scheme = scheme;
  const auto& level = scheme == BandScheme::average ? stats.avg_excess_db : stats.mean_daily_peak_db;
  if (level) {
    c.noise_band = scheme == BandScheme::average ? band_of(*level, kAverageEdges) : band_of(*level, kPeakEdges);
  }
  c.persistence_band = band_of(stats.persistence, kPersistenceEdges);
  return c;
}

std::string noise_band_label(BandScheme scheme, int band) {
  static const std::array<const char*, 3> average = {"<4", "4-8", ">=8"};
  static const std::array<const char*, 4> peak = {"<10", "10-18", "18-26", ">=26"};
  if (scheme == BandScheme::average && band >= 0 && band < 3) return average[band];
  if (scheme == BandScheme::peak && band >= 0 && band < 4) return peak[band];
  throw std::out_of_range("noise band out of range");
}

std::string persistence_band_label(int band) {
  static const std::array<const char*, 3> labels = {"<25%", "25-50%", ">=50%"};
  if (band < 0 || band > 2) throw std::out_of_range("persistence band out of range");
  return labels[band];
}

std::vector<EnrichedTrip> filter_trips(std::span<const EnrichedTrip> trips, const Registry& registry,
                                       const TripFilter& filter) {
  auto in_range = [](double v, const std::optional<std::pair<double, double>>& r) {
    return !r || (r->first <= v && v <= r->second);
  };
  const bool needs_profile = filter.engine_hp || filter.loa_m || !filter.gear.empty();
  std::vector<EnrichedTrip> out;
  for (const auto& et : trips) {
    const Trip& t = et.trip;
    if (!filter.mmsi.empty() && !filter.mmsi.contains(t.mmsi)) {
      continue;
    }
    if (needs_profile) {
      auto it = registry.find(t.mmsi);
      if (it == registry.end()) {
        continue;
      }
      const VesselProfile& v = it->second;
      if (!in_range(v.engine_hp, filter.engine_hp) || !in_range(v.loa_m, filter.loa_m)) {
        continue;
      }
      if (!filter.gear.empty() && !filter.gear.contains(v.gear)) {
        continue;
      }
    }
    if (filter.activity) {
      const auto samples = t.activity.samples();
      const int code = static_cast<int>(*filter.activity);
      if (std::none_of(samples.begin(), samples.end(), [&](const auto& s) { return s.value == code; })) {
        continue;
      }
    }
    out.push_back(et);
  }
  return out;
}

std::map<BivariateClass, double> area_summary(std::span<const CellStats> stats, std::span<const BivariateClass> classes) {
  if (stats.size() != classes.size()) {
    throw std::invalid_argument("stats and classes differ in length");
  }
  if (stats.empty()) {
    throw std::invalid_argument("area summary of an empty cell set");
  }
  std::map<BivariateClass, std::size_t> counts;
  for (const auto& c : classes) ++counts[c];
  std::map<BivariateClass, double> out;
  const double n = static_cast<double>(classes.size());
  for (const auto& [c, k] : counts) out[c] = static_cast<double>(k) / n;
  return out;
}

void export_stats_csv(std::span<const CellStats> stats, BandScheme scheme, std::ostream& out) {
  out << "cell_id,avg_excess_db,active_days,total_days,persistence,mean_daily_peak_db,noise_band,persistence_band\n";
  char buf[64];
  auto opt = [&](const std::optional<double>& v) -> std::string {
    if (!v) return {};
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
  };
  for (const auto& s : stats) {
    const auto c = bivariate_classify(s, scheme);
    std::snprintf(buf, sizeof buf, "%.6f", s.persistence);
    const std::string persistence = buf;
    out << s.cell_id << ',' << opt(s.avg_excess_db) << ',' << s.active_days << ',' << s.total_days << ','
        << persistence << ',' << opt(s.mean_daily_peak_db) << ',' << noise_band_label(scheme, c.noise_band) << ','
        << persistence_band_label(c.persistence_band) << '\n';
  }
}

}  // namespace hydronoise
