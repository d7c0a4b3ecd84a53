// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/time.hpp"

#include <charconv>
#include <cstdio>

namespace hydronoise {

namespace {

bool parse_uint(std::string_view text, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > text.size()) {
    return false;
  }
  const char* first = text.data() + pos;
  const char* last = first + len;
  for (const char* c = first; c != last; ++c) {
    if (*c < '0' || *c > '9') {
      return false;
    }
  }
  return std::from_chars(first, last, out).ec == std::errc{};
}

std::optional<std::chrono::year_month_day> parse_ymd(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  if (!parse_uint(text, 0, 4, y) || !parse_uint(text, 5, 2, m) || !parse_uint(text, 8, 2, d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    return std::nullopt;
  }
  return ymd;
}

}  // namespace

std::optional<Instant> parse_iso8601(std::string_view text) {
  if (!text.empty() && text.back() == 'Z') {
    text.remove_suffix(1);
  }
  if (text.size() != 19 || (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  auto ymd = parse_ymd(text.substr(0, 10));
  int hh = 0, mm = 0, ss = 0;
  if (!ymd || !parse_uint(text, 11, 2, hh) || !parse_uint(text, 14, 2, mm) || !parse_uint(text, 17, 2, ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 59) {
    return std::nullopt;
  }
  const auto days = std::chrono::sys_days{*ymd}.time_since_epoch().count();
  return Instant{static_cast<std::int64_t>(days) * 86400 + hh * 3600 + mm * 60 + ss};
}

std::string format_iso8601(Instant t) {
  const auto day = day_of(t);
  const std::int64_t secs = t.epoch_seconds - static_cast<std::int64_t>(day.time_since_epoch().count()) * 86400;
  const std::chrono::year_month_day ymd{day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(secs / 3600),
                static_cast<int>(secs / 60 % 60), static_cast<int>(secs % 60));
  return buf;
}

std::optional<std::chrono::sys_days> parse_date(std::string_view text) {
  if (text.size() != 10) {
    return std::nullopt;
  }
  auto ymd = parse_ymd(text);
  if (!ymd) {
    return std::nullopt;
  }
  return std::chrono::sys_days{*ymd};
}

std::string format_date(std::chrono::sys_days day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<YearMonth> parse_year_month(std::string_view text) {
  int y = 0, m = 0;
  if (text.size() != 7 || text[4] != '-' || !parse_uint(text, 0, 4, y) || !parse_uint(text, 5, 2, m)) {
    return std::nullopt;
  }
  if (m < 1 || m > 12) {
    return std::nullopt;
  }
  return YearMonth{y, static_cast<unsigned>(m)};
}

std::string format_year_month(YearMonth ym) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", ym.year, ym.month);
  return buf;
}

std::chrono::sys_days day_of(Instant t) {
  std::int64_t days = t.epoch_seconds / 86400;
  if (t.epoch_seconds % 86400 < 0) {
    --days;
  }
  return std::chrono::sys_days{std::chrono::days{days}};
}

YearMonth year_month_of(Instant t) {
  const std::chrono::year_month_day ymd{day_of(t)};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

Instant start_of(std::chrono::sys_days day) {
  return {static_cast<std::int64_t>(day.time_since_epoch().count()) * 86400};
}

unsigned iso_weekday_index(std::chrono::sys_days day) {
  return std::chrono::weekday{day}.iso_encoding() - 1;
}

}  // namespace hydronoise
