// SPDX-License-Identifier: Apache-2.0
//
// Received-noise accumulation over the spatio-temporal grid.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydronoise/acoustics.hpp"
#include "hydronoise/enrich.hpp"
#include "hydronoise/grid.hpp"
#include "hydronoise/spatial_index.hpp"
#include "hydronoise/time.hpp"

namespace hydronoise {

inline constexpr std::int64_t kSamplingPeriodS = 60;

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One (cell, minute) value: linear intensity before finalize(), dB after.
struct FieldEntry {
  CellId cell_id = 0;
  std::uint32_t epoch_minute = 0;
  double level = 0.0;

  friend bool operator==(const FieldEntry&, const FieldEntry&) = default;
};

/// Received noise in excess of ambient at one frequency. Entries are sorted by
/// (epoch_minute, cell_id); cells that received nothing have no entry.
class NoiseField {
 public:
  NoiseField() = default;
  NoiseField(int frequency_hz, std::uint64_t grid_hash, TimeWindow window)
      : frequency_hz_(frequency_hz), grid_hash_(grid_hash), window_(window) {}

  int frequency_hz() const { return frequency_hz_; }
  std::uint64_t grid_hash() const { return grid_hash_; }
  const TimeWindow& window() const { return window_; }
  bool finalized() const { return finalized_; }
  std::span<const FieldEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Takes accumulated intensities; they must already be sorted and unique.
  void assign_intensities(std::vector<FieldEntry> entries);
  /// Adds another intensity field of the same frequency and grid.
  void merge(const NoiseField& other);
  /// Converts every intensity to 10*log10(intensity). Idempotent.
  void finalize();

  /// Level stored for (cell, minute), if any.
  std::optional<double> at(CellId cell, std::uint32_t epoch_minute) const;

  /// Restores a finalized field from its persisted parts.
  static NoiseField from_levels(int frequency_hz, std::uint64_t grid_hash, TimeWindow window,
                                std::vector<FieldEntry> db_entries);

 private:
  int frequency_hz_ = 0;
  std::uint64_t grid_hash_ = 0;
  TimeWindow window_;
  bool finalized_ = false;
  std::vector<FieldEntry> entries_;
};

struct EngineOptions {
  SoundContext sound;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
  /// Process trips in canonical (mmsi, trip_id) order.
  bool deterministic = false;
};

/// Counters gathered during a run.
struct EngineReport {
  std::size_t instants_evaluated = 0;
  std::size_t outside_grid = 0;
  std::size_t missing_depth = 0;
  std::size_t contributions = 0;
  std::size_t centroid_visits = 0;
  /// Sum over evaluated instants of SpatialIndex::visit_bound(radius).
  double visit_bound = 0.0;
  double max_radius_m = 0.0;
  std::vector<std::string> warnings;
};

/// Index over the sea-cell centroids of a grid.
SpatialIndex make_centroid_index(const Grid& grid);

/// For every trip and every minute of the window at which it
/// has a position, add the received intensity of every sea cell whose
/// centroid lies strictly within the propagation radius. Requires an ambient
/// surface on the grid for each calendar month the window touches. The
/// result holds intensities, so partial fields can still be merged; call
/// finalize() for levels.
NoiseField compute_noise_field(std::span<const EnrichedTrip> trips, const Grid& grid, const SpatialIndex& index,
                               const FrequencyParams& fp, TimeWindow window, const EngineOptions& options = {},
                               EngineReport* report = nullptr);

/// Reference evaluation of every (position, cell) pair with no index.
/// Refuses (EngineError) more than kBruteForceLimit pair evaluations.
NoiseField brute_force_field(std::span<const EnrichedTrip> trips, const Grid& grid, const FrequencyParams& fp,
                             TimeWindow window, const SoundContext& sound = {});

inline constexpr double kBruteForceLimit = 1e8;

/// Largest |a - b| in dB over the union of entries; an entry present on one
/// side only counts as infinite. Both fields must be finalized.
double max_abs_difference_db(const NoiseField& a, const NoiseField& b);

/// Binary field file: magic `HYDNF1`, little-endian header, then the
/// cell_id (u32), epoch_minute (u32) and rl_db (f64) columns.
void store_field(const NoiseField& field, std::ostream& out);
void store_field(const NoiseField& field, const std::filesystem::path& path);

/// Throws EngineError on a bad file or when `expected_grid_hash` is given and
/// differs from the stored one.
NoiseField load_field(std::istream& in, std::optional<std::uint64_t> expected_grid_hash = std::nullopt);
NoiseField load_field(const std::filesystem::path& path,
                      std::optional<std::uint64_t> expected_grid_hash = std::nullopt);

/// CSV `cell_id,timestamp_iso8601,rl_db`.
void export_field_csv(const NoiseField& field, std::ostream& out);

}  // namespace hydronoise
