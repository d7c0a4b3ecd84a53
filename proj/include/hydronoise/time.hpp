// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hydronoise {

/// A UTC instant with one-second resolution.
struct Instant {
  std::int64_t epoch_seconds = 0;

  constexpr auto operator<=>(const Instant&) const = default;

  constexpr Instant operator+(std::int64_t seconds) const { return {epoch_seconds + seconds}; }
  constexpr Instant operator-(std::int64_t seconds) const { return {epoch_seconds - seconds}; }
  constexpr std::int64_t operator-(Instant other) const { return epoch_seconds - other.epoch_seconds; }
};

/// Closed interval of instants.
struct TimeWindow {
  Instant begin;
  Instant end;

  constexpr bool contains(Instant t) const { return begin <= t && t <= end; }
};

struct YearMonth {
  int year = 1970;
  unsigned month = 1;

  constexpr auto operator<=>(const YearMonth&) const = default;
};

/// Accepts `YYYY-MM-DDTHH:MM:SS` with an optional trailing `Z`; a space may
/// replace the `T`. Returns nullopt on anything else.
std::optional<Instant> parse_iso8601(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_iso8601(Instant t);

/// `YYYY-MM-DD`
std::optional<std::chrono::sys_days> parse_date(std::string_view text);
std::string format_date(std::chrono::sys_days day);

/// `YYYY-MM`
std::optional<YearMonth> parse_year_month(std::string_view text);
std::string format_year_month(YearMonth ym);

std::chrono::sys_days day_of(Instant t);
YearMonth year_month_of(Instant t);
Instant start_of(std::chrono::sys_days day);

/// Monday = 0 ... Sunday = 6.
unsigned iso_weekday_index(std::chrono::sys_days day);

}  // namespace hydronoise
