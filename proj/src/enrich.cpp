// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/enrich.hpp"

#include <cmath>
#include <stdexcept>

namespace hydronoise {

namespace {

Activity classify_segment(bool from_port, bool to_port, double mean_speed, const ActivityThresholds& th) {
  if (from_port && to_port) return Activity::in_port;
  if (!from_port && to_port) return Activity::entering;
  if (from_port && !to_port) return Activity::exiting;
  if (mean_speed >= th.fish_min_kn && mean_speed <= th.fish_max_kn) return Activity::fishing;
  return Activity::navigation;
}

}  // namespace

TInt classify_activity(const Trip& trip, std::span<const PortArea> ports, const ActivityThresholds& thresholds) {
  const auto pts = trip.trip.samples();
  if (pts.empty()) {
    return {};
  }
  std::vector<bool> in_port(pts.size());
  std::vector<double> speed(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    in_port[i] = in_any_port(pts[i].value, ports);
    speed[i] = trip.speed.value_at(pts[i].t).value_or(0.0);
  }

  std::vector<Sample<int>> out;
  out.reserve(pts.size());
  if (pts.size() == 1) {
    out.push_back({pts[0].t, static_cast<int>(classify_segment(in_port[0], in_port[0], speed[0], thresholds))});
    return TInt(std::move(out), Interpolation::step);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double mean = 0.5 * (speed[i] + speed[i + 1]);
    out.push_back({pts[i].t, static_cast<int>(classify_segment(in_port[i], in_port[i + 1], mean, thresholds))});
  }
  out.push_back({pts.back().t, out.back().value});
  return TInt(std::move(out), Interpolation::step);
}

double compute_sl0(double engine_hp, int frequency_hz, const FrequencyTable& table) {
  if (!(engine_hp > 0.0)) {
    throw std::invalid_argument("engine power must be positive");
  }
  const double anchor = table.at(frequency_hz).anchor_sl0_db;
  return anchor + 3.0 * std::log2(engine_hp / kReferenceEngineHp);
}

std::optional<EnrichedTrip> attach_aspects(Trip trip, const Registry& registry, std::span<const PortArea> ports,
                                           const ActivityThresholds& thresholds, const FrequencyTable& table,
                                           std::vector<std::string>* warnings) {
  auto it = registry.find(trip.mmsi);
  if (it == registry.end()) {
    if (warnings) {
      warnings->push_back("vessel " + std::to_string(static_cast<std::uint32_t>(trip.mmsi)) +
                          " is not in the registry; trip " + std::to_string(trip.trip_id) + " skipped");
    }
    return std::nullopt;
  }
  EnrichedTrip out;
  out.source.mmsi = trip.mmsi;
  for (int f : table.frequencies()) {
    out.source.sl0_db[f] = compute_sl0(it->second.engine_hp, f, table);
  }
  trip.activity = classify_activity(trip, ports, thresholds);
  trip.length_m = path_length(trip.trip);
  trip.duration_s = trip.trip.empty() ? 0 : trip.trip.end() - trip.trip.start();
  out.trip = std::move(trip);
  return out;
}

}  // namespace hydronoise
