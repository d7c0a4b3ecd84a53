// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/acoustics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hydronoise {

FrequencyTable::FrequencyTable(std::vector<FrequencyParams> params) {
  for (const auto& p : params) {
    set(p);
  }
}

const FrequencyTable& FrequencyTable::defaults() {
  static const FrequencyTable table({
      {63, 136.0, 5.0, 10.0, 1e-6},
      {125, 133.0, 10.0, 4.0, 1e-6},
      {400, 126.0, 15.0, 4.0, 1e-5},
      {4000, 123.0, 15.0, 2.0, 1e-4},
  });
  return table;
}

const FrequencyParams& FrequencyTable::at(int frequency_hz) const {
  auto it = params_.find(frequency_hz);
  if (it == params_.end()) {
    throw std::out_of_range("frequency " + std::to_string(frequency_hz) + " Hz is not configured");
  }
  return it->second;
}

std::vector<int> FrequencyTable::frequencies() const {
  std::vector<int> out;
  for (const auto& [f, _] : params_) {
    out.push_back(f);
  }
  return out;
}

void FrequencyTable::set(const FrequencyParams& p) {
  if (p.frequency_hz <= 0 || !std::isfinite(p.anchor_sl0_db) || !(p.fishing_inc_db >= 0.0) ||
      !(p.trans_mult > 0.0) || !(p.alpha_db_per_m > 0.0)) {
    throw std::invalid_argument("invalid parameters for frequency " + std::to_string(p.frequency_hz));
  }
  params_[p.frequency_hz] = p;
}

double source_level(double sl0_db, double speed_kn, bool fishing, const FrequencyParams& fp,
                    const SoundContext& ctx) {
  double sl = sl0_db;
  if (speed_kn > ctx.v0_kn) {
    sl += ctx.speed_coeff_db * std::log10(speed_kn / ctx.v0_kn);
  }
  if (fishing) {
    sl += fp.fishing_inc_db;
  }
  return sl;
}

double transmission_loss(double dist_m, double r_trans_m, double alpha_db_per_m) {
  if (!(dist_m > 0.0)) {
    throw std::invalid_argument("transmission loss needs a positive distance");
  }
  if (!(r_trans_m > 0.0)) {
    throw std::invalid_argument("transition range must be positive");
  }
  return detail::spreading_loss(dist_m, r_trans_m) + alpha_db_per_m * dist_m;
}

double received_level(double sl_db, double dist_m, double r_trans_m, double alpha_db_per_m, double ambient_db) {
  return sl_db - transmission_loss(dist_m, r_trans_m, alpha_db_per_m) - ambient_db;
}

double propagation_radius(double sl_db, double r_trans_m, double ambient_db) {
  if (!(r_trans_m > 0.0)) {
    throw std::invalid_argument("transition range must be positive");
  }
  const double r = std::pow(10.0, (sl_db - 5.0 * std::log10(r_trans_m) - ambient_db) / 15.0);
  if (r >= r_trans_m) {
    return r;
  }
  // inside the spherical regime the mode-stripping inverse falls short
  return std::pow(10.0, (sl_db - ambient_db) / 20.0);
}

double sum_levels(std::span<const double> levels_db) {
  if (levels_db.empty()) {
    throw std::invalid_argument("cannot sum an empty set of levels");
  }
  double intensity = 0.0;
  for (double l : levels_db) {
    intensity += db_to_intensity(l);
  }
  return intensity_to_db(intensity);
}

}  // namespace hydronoise
