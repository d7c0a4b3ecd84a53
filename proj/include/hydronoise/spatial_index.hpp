// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "hydronoise/geometry.hpp"

namespace hydronoise {

/// Uniform bucket index over a fixed set of points (cell centroids).
///
/// A disc query walks bucket rows and, per row, only the columns the disc can
/// reach. Every visited bucket intersects the disc, so with one point per
/// bucket the visits stay within the lattice count of the disc grown by a
/// bucket diagonal.
class SpatialIndex {
 public:
  SpatialIndex() = default;
  SpatialIndex(std::span<const Point> points, Point origin, double bucket_size, int n_cols, int n_rows);

  /// Calls fn(point_index, distance) for every point with distance < radius,
  /// in ascending point-index order within each bucket row. Returns the number
  /// of points examined.
  template <class Fn>
  std::size_t for_each_within(Point centre, double radius, Fn&& fn) const {
    if (!(radius > 0.0) || points_.empty()) {
      return 0;
    }
    std::size_t visits = 0;
    const double inv = 1.0 / bucket_;
    const int row_lo = std::max(0, static_cast<int>(std::floor((centre.y - radius - origin_.y) * inv)));
    const int row_hi = std::min(n_rows_ - 1, static_cast<int>(std::floor((centre.y + radius - origin_.y) * inv)));
    for (int row = row_lo; row <= row_hi; ++row) {
      const double band_lo = origin_.y + row * bucket_;
      const double band_hi = band_lo + bucket_;
      const double dy = centre.y < band_lo ? band_lo - centre.y : (centre.y > band_hi ? centre.y - band_hi : 0.0);
      if (dy >= radius) {
        continue;
      }
      const double half_chord = std::sqrt(radius * radius - dy * dy);
      const int col_lo = std::max(0, static_cast<int>(std::floor((centre.x - half_chord - origin_.x) * inv)));
      const int col_hi =
          std::min(n_cols_ - 1, static_cast<int>(std::floor((centre.x + half_chord - origin_.x) * inv)));
      for (int col = col_lo; col <= col_hi; ++col) {
        const std::size_t b = static_cast<std::size_t>(row) * static_cast<std::size_t>(n_cols_) + col;
        for (std::uint32_t k = bucket_start_[b]; k < bucket_start_[b + 1]; ++k) {
          const std::uint32_t i = entries_[k];
          ++visits;
          const double d = distance(centre, points_[i]);
          if (d < radius) {
            fn(static_cast<std::size_t>(i), d);
          }
        }
      }
    }
    return visits;
  }

  /// Upper bound on visits for one query with one point per bucket:
  /// ceil(pi*(r + sqrt(2)*b)^2 / b^2).
  static std::size_t visit_bound(double radius, double bucket_size);

 private:
  std::vector<Point> points_;
  Point origin_;
  double bucket_ = 1.0;
  int n_cols_ = 0;
  int n_rows_ = 0;
  std::vector<std::uint32_t> bucket_start_;  // CSR offsets, size n_cols*n_rows + 1
  std::vector<std::uint32_t> entries_;
};

}  // namespace hydronoise
