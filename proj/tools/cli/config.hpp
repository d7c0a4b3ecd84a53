// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydronoise/acoustics.hpp"
#include "hydronoise/enrich.hpp"
#include "hydronoise/grid.hpp"

namespace hydronoise::cli {

/// Bad invocation or configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Paths {
  std::filesystem::path ais;
  std::filesystem::path registry;
  std::filesystem::path ports;
  std::filesystem::path bathymetry;
  std::filesystem::path stations;
  std::filesystem::path output;
};

struct Config {
  std::filesystem::path file;
  std::uint64_t hash = 0;  ///< FNV-1a of the file bytes
  Paths paths;
  GridSpec grid;
  ActivityThresholds activity;
  std::int64_t gap_s = 1800;
  double idw_power = 2.0;
  std::int64_t sampling_period_s = 60;
  std::vector<int> frequencies{63, 125, 400, 4000};
  FrequencyTable table = FrequencyTable::defaults();
  SoundContext sound;
};

/// Reads an INI file. Relative paths resolve against the file's directory.
Config load_config(const std::filesystem::path& file);

/// Throws UsageError naming `what` and the path when it does not exist.
void require_exists(const std::filesystem::path& p, const std::string& what);

/// Text shown under `--help`.
extern const char* const kConfigReference;

}  // namespace hydronoise::cli
