// SPDX-License-Identifier: Apache-2.0
//
// Sonar-equation kernel. All levels are dB re 1 uPa, distances in metres.
#pragma once

#include <cmath>
#include <map>
#include <span>
#include <vector>

namespace hydronoise {

/// Per-frequency model constants.
struct FrequencyParams {
  int frequency_hz = 0;
  double anchor_sl0_db = 0.0;   ///< source level of the 835 hp reference boat, not trawling
  double fishing_inc_db = 0.0;  ///< extra radiated level while trawling
  double trans_mult = 1.0;      ///< transition range = depth * trans_mult
  double alpha_db_per_m = 0.0;  ///< fallback absorption when a cell has none
};

/// Speed law constants.
struct SoundContext {
  double v0_kn = 3.9;
  double speed_coeff_db = 15.39;
};

/// Engine power of the boat the anchor levels were measured on.
inline constexpr double kReferenceEngineHp = 835.0;

/// Distances below this are clamped; source levels are referenced to 1 m.
inline constexpr double kMinDistanceM = 1.0;

/// The configured frequency set with their parameters.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(std::vector<FrequencyParams> params);

  /// 63, 125, 400 and 4000 Hz with the calibrated defaults.
  static const FrequencyTable& defaults();

  /// Throws std::out_of_range for an unconfigured frequency.
  const FrequencyParams& at(int frequency_hz) const;
  bool contains(int frequency_hz) const { return params_.count(frequency_hz) != 0; }
  std::vector<int> frequencies() const;

  void set(const FrequencyParams& p);

 private:
  std::map<int, FrequencyParams> params_;
};

/// SL = sl0 + speed term (only above v0) + fishing increment.
double source_level(double sl0_db, double speed_kn, bool fishing, const FrequencyParams& fp,
                    const SoundContext& ctx = {});

/// Spherical spreading up to r_trans, mode stripping beyond, plus linear
/// absorption. Throws std::invalid_argument for dist <= 0 or r_trans <= 0.
double transmission_loss(double dist_m, double r_trans_m, double alpha_db_per_m);

/// Received level in excess of ambient: sl - TL_tot - ambient.
double received_level(double sl_db, double dist_m, double r_trans_m, double alpha_db_per_m, double ambient_db);

/// Distance at which the loss (absorption ignored) brings the source down to
/// ambient: 10^((sl - 5 log10(r_trans) - ambient)/15) when that reaches
/// r_trans, else the spherical 10^((sl - ambient)/20). Absorption only
/// shortens the true range, so this overestimates it.
double propagation_radius(double sl_db, double r_trans_m, double ambient_db);

/// Incoherent sum. Throws std::invalid_argument on an empty sequence.
double sum_levels(std::span<const double> levels_db);

inline double db_to_intensity(double db) { return std::pow(10.0, db / 10.0); }
inline double intensity_to_db(double intensity) { return 10.0 * std::log10(intensity); }

namespace detail {

// Unchecked loss used on the propagation hot path; callers guarantee
// dist > 0 and r_trans > 0.
inline double spreading_loss(double dist_m, double r_trans_m) {
  if (dist_m <= r_trans_m) {
    return 20.0 * std::log10(dist_m);
  }
  return 15.0 * std::log10(dist_m) + 5.0 * std::log10(r_trans_m);
}

}  // namespace detail

}  // namespace hydronoise
