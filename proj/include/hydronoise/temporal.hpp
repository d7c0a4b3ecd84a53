// SPDX-License-Identifier: Apache-2.0
//
// Temporal values: time-ordered (instant, value) sequences with linear or
// step interpolation, period-bucket sampling and synchronization of several
// values onto one instant set.
#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hydronoise/geometry.hpp"
#include "hydronoise/time.hpp"

namespace hydronoise {

enum class Interpolation { linear, step };

template <class T>
struct Sample {
  Instant t;
  T value;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Payloads that admit affine interpolation.
template <class T>
concept Continuous = std::same_as<T, double> || std::same_as<T, Point>;

/// Payloads interpolated with a step function.
template <class T>
concept Discrete = std::integral<T>;

template <class T>
  requires Continuous<T> || Discrete<T>
class Temporal {
 public:
  /// The empty temporal value (e.g. a sampling that hit no bucket).
  Temporal() : interpolation_(Continuous<T> ? Interpolation::linear : Interpolation::step) {}

  /// Throws std::invalid_argument unless instants strictly increase and the
  /// interpolation mode suits the payload (linear for scalars and points,
  /// step for discrete codes).
  Temporal(std::vector<Sample<T>> samples, Interpolation interpolation)
      : samples_(std::move(samples)), interpolation_(interpolation) {
    if (Continuous<T> != (interpolation == Interpolation::linear)) {
      throw std::invalid_argument("interpolation mode does not match payload kind");
    }
    for (std::size_t i = 1; i < samples_.size(); ++i) {
      if (samples_[i].t <= samples_[i - 1].t) {
        throw std::invalid_argument("temporal instants must be strictly increasing");
      }
    }
  }

  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }
  Interpolation interpolation() const { return interpolation_; }
  std::span<const Sample<T>> samples() const { return samples_; }
  const Sample<T>& operator[](std::size_t i) const { return samples_[i]; }

  Instant start() const { return samples_.front().t; }
  Instant end() const { return samples_.back().t; }

  bool defined_at(Instant t) const { return !empty() && start() <= t && t <= end(); }

  /// Value at `t`, or nullopt outside [start, end]. Never extrapolates.
  std::optional<T> value_at(Instant t) const {
    if (!defined_at(t)) {
      return std::nullopt;
    }
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](Instant lhs, const Sample<T>& s) { return lhs < s.t; });
    const Sample<T>& prev = *std::prev(it);
    if (prev.t == t || it == samples_.end()) {
      return prev.value;
    }
    if constexpr (Continuous<T>) {
      const double frac = static_cast<double>(t - prev.t) / static_cast<double>(it->t - prev.t);
      return prev.value + (it->value - prev.value) * frac;
    } else {
      return prev.value;
    }
  }

  friend bool operator==(const Temporal& a, const Temporal& b) {
    return a.interpolation_ == b.interpolation_ && a.samples_ == b.samples_;
  }

 private:
  std::vector<Sample<T>> samples_;
  Interpolation interpolation_;
};

using TFloat = Temporal<double>;
using TInt = Temporal<int>;
using TPoint = Temporal<Point>;

namespace detail {

// Smallest k >= 0 with origin + k*period >= t.
inline std::int64_t first_bucket_at_or_after(Instant t, std::int64_t period, Instant origin) {
  const std::int64_t delta = t - origin;
  if (delta <= 0) {
    return 0;
  }
  return (delta + period - 1) / period;
}

// Sample `tv` at the lattice instants origin + k*period that fall in [lo, hi].
template <class T>
Temporal<T> sample_between(const Temporal<T>& tv, std::int64_t period, Instant origin, Instant lo, Instant hi) {
  std::vector<Sample<T>> out;
  if (!tv.empty() && lo <= hi) {
    for (std::int64_t k = first_bucket_at_or_after(lo, period, origin);; ++k) {
      const Instant t = origin + k * period;
      if (t > hi) {
        break;
      }
      out.push_back({t, *tv.value_at(t)});
    }
  }
  if (out.empty()) {
    return {};
  }
  return Temporal<T>(std::move(out), tv.interpolation());
}

inline void check_period(std::int64_t period_seconds) {
  if (period_seconds <= 0) {
    throw std::invalid_argument("sampling period must be positive");
  }
}

}  // namespace detail

/// Resample onto the instants {origin + k*period | k >= 0} inside the span of
/// `tv`. The result is empty when no bucket instant falls in the span.
template <class T>
Temporal<T> tsample(const Temporal<T>& tv, std::int64_t period_seconds, Instant origin) {
  detail::check_period(period_seconds);
  if (tv.empty()) {
    return {};
  }
  return detail::sample_between(tv, period_seconds, origin, tv.start(), tv.end());
}

/// Resample every value onto one lattice and keep only the instants at which
/// all of them are defined. Disjoint spans give empty outputs.
template <class... Ts>
std::tuple<Temporal<Ts>...> synchronize(std::int64_t period_seconds, Instant origin, const Temporal<Ts>&... tvs) {
  detail::check_period(period_seconds);
  if ((tvs.empty() || ...)) {
    throw std::invalid_argument("synchronize requires non-empty temporal values");
  }
  const Instant lo = std::max({tvs.start()...});
  const Instant hi = std::min({tvs.end()...});
  return {detail::sample_between(tvs, period_seconds, origin, lo, hi)...};
}

/// Homogeneous overload of synchronize for any number of values.
template <class T>
std::vector<Temporal<T>> synchronize(std::span<const Temporal<T>> tvs, std::int64_t period_seconds, Instant origin) {
  detail::check_period(period_seconds);
  std::vector<Temporal<T>> out;
  if (tvs.empty()) {
    return out;
  }
  Instant lo = tvs.front().empty() ? Instant{} : tvs.front().start();
  Instant hi = tvs.front().empty() ? Instant{} : tvs.front().end();
  for (const auto& tv : tvs) {
    if (tv.empty()) {
      throw std::invalid_argument("synchronize requires non-empty temporal values");
    }
    lo = std::max(lo, tv.start());
    hi = std::min(hi, tv.end());
  }
  out.reserve(tvs.size());
  for (const auto& tv : tvs) {
    out.push_back(detail::sample_between(tv, period_seconds, origin, lo, hi));
  }
  return out;
}

}  // namespace hydronoise
