// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace hydronoise {

/// Planar point in projected metres.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Geographic coordinate in degrees (WGS84).
struct LonLat {
  double lon = 0.0;
  double lat = 0.0;
};

struct Extent {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(Point p) const { return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y; }
  bool contains(const Extent& o) const {
    return o.min_x >= min_x && o.max_x <= max_x && o.min_y >= min_y && o.max_y <= max_y;
  }
};

/// Simple closed polygon. The ring is stored without the repeated closing
/// vertex.
class Polygon {
 public:
  Polygon() = default;

  /// Throws std::invalid_argument when the ring has fewer than three distinct
  /// vertices or self-intersects. A trailing vertex equal to the first is
  /// dropped.
  explicit Polygon(std::vector<Point> ring);

  const std::vector<Point>& ring() const { return ring_; }
  const Extent& bounds() const { return bounds_; }

  /// Even-odd rule; points exactly on an edge may fall either way.
  bool contains(Point p) const;

 private:
  std::vector<Point> ring_;
  Extent bounds_;
};

/// Forward/inverse map projection between WGS84 and a metric plane.
///
/// Supported codes: 3035 (ETRS89 / LAEA Europe, ellipsoidal) and the WGS84
/// UTM zones 32601-32660 / 32701-32760 (transverse Mercator, Krueger series).
class Projection {
 public:
  /// Throws std::invalid_argument for unsupported codes.
  static Projection from_epsg(int epsg);

  int epsg() const { return epsg_; }

  Point forward(LonLat ll) const;
  LonLat inverse(Point p) const;

 private:
  enum class Kind { utm, laea };

  Projection() = default;

  int epsg_ = 0;
  Kind kind_ = Kind::utm;
  double lon0_ = 0.0;
  double false_easting_ = 0.0;
  double false_northing_ = 0.0;
};

}  // namespace hydronoise
