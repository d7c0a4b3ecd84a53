// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hydronoise/acoustics.hpp"
#include "hydronoise/ingest.hpp"

namespace hydronoise {

enum class Activity : int {
  in_port = 0,
  entering = 1,
  exiting = 2,
  fishing = 3,
  navigation = 4,
};

inline bool is_valid_activity(int code) { return code >= 0 && code <= 4; }

/// Speed band (knots, inclusive) in which an offshore segment counts as
/// fishing.
struct ActivityThresholds {
  double fish_min_kn = 1.0;
  double fish_max_kn = 6.0;
};

/// Base source level per configured frequency for one vessel.
struct SourceProfile {
  Mmsi mmsi{};
  std::map<int, double> sl0_db;
};

struct EnrichedTrip {
  Trip trip;
  SourceProfile source;
};

/// Step-valued activity. Each segment [t_i, t_i+1) is labelled from its end
/// points: both in port -> in_port, out->in -> entering, in->out -> exiting,
/// otherwise fishing when the mean of the end-point speeds lies in the band,
/// else navigation. The last instant repeats the last segment's code.
TInt classify_activity(const Trip& trip, std::span<const PortArea> ports, const ActivityThresholds& thresholds);

/// Anchor level plus 3 dB per doubling of engine power relative to the
/// 835 hp reference boat. Throws std::out_of_range for an unconfigured
/// frequency and std::invalid_argument for non-positive power.
double compute_sl0(double engine_hp, int frequency_hz, const FrequencyTable& table = FrequencyTable::defaults());

/// Attaches activity, long-term aspects and the per-frequency SL0. Returns
/// nullopt (and appends a warning) when the vessel is not in the registry.
std::optional<EnrichedTrip> attach_aspects(Trip trip, const Registry& registry, std::span<const PortArea> ports,
                                           const ActivityThresholds& thresholds,
                                           const FrequencyTable& table = FrequencyTable::defaults(),
                                           std::vector<std::string>* warnings = nullptr);

}  // namespace hydronoise
