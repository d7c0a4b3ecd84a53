// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hydronoise {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// WGS84 / GRS80 share a and differ in 1/f only at the 1e-4 level, which is
// well below a millimetre for our purposes.
constexpr double kA = 6378137.0;
constexpr double kF = 1.0 / 298.257223563;

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](Point a, Point b, Point p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  };
  return (d1 == 0 && on_segment(q1, q2, p1)) || (d2 == 0 && on_segment(q1, q2, p2)) ||
         (d3 == 0 && on_segment(p1, p2, q1)) || (d4 == 0 && on_segment(p1, p2, q2));
}

// Transverse Mercator series coefficients, sixth order in n.
struct KruegerSeries {
  double big_a;
  double alpha[6];
  double beta[6];
};

const KruegerSeries& krueger() {
  static const KruegerSeries s = [] {
    const double n = kF / (2.0 - kF);
    const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
    KruegerSeries k{};
    k.big_a = kA / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
    k.alpha[0] = n / 2 - 2 * n2 / 3 + 5 * n3 / 16 + 41 * n4 / 180 - 127 * n5 / 288 + 7891 * n6 / 37800;
    k.alpha[1] = 13 * n2 / 48 - 3 * n3 / 5 + 557 * n4 / 1440 + 281 * n5 / 630 - 1983433 * n6 / 1935360;
    k.alpha[2] = 61 * n3 / 240 - 103 * n4 / 140 + 15061 * n5 / 26880 + 167603 * n6 / 181440;
    k.alpha[3] = 49561 * n4 / 161280 - 179 * n5 / 168 + 6601661 * n6 / 7257600;
    k.alpha[4] = 34729 * n5 / 80640 - 3418889 * n6 / 1995840;
    k.alpha[5] = 212378941 * n6 / 319334400;
    k.beta[0] = n / 2 - 2 * n2 / 3 + 37 * n3 / 96 - n4 / 360 - 81 * n5 / 512 + 96199 * n6 / 604800;
    k.beta[1] = n2 / 48 + n3 / 15 - 437 * n4 / 1440 + 46 * n5 / 105 - 1118711 * n6 / 3870720;
    k.beta[2] = 17 * n3 / 480 - 37 * n4 / 840 - 209 * n5 / 4480 + 5569 * n6 / 90720;
    k.beta[3] = 4397 * n4 / 161280 - 11 * n5 / 504 - 830251 * n6 / 7257600;
    k.beta[4] = 4583 * n5 / 161280 - 108847 * n6 / 3991680;
    k.beta[5] = 20648693 * n6 / 638668800;
    return k;
  }();
  return s;
}

constexpr double kUtmScale = 0.9996;

double eccentricity() { return std::sqrt(kF * (2.0 - kF)); }

// tan of the conformal latitude for tau = tan(phi).
double conformal_tau(double tau, double e) {
  const double tau1 = std::hypot(1.0, tau);
  const double sig = std::sinh(e * std::atanh(e * tau / tau1));
  return std::hypot(1.0, sig) * tau - sig * tau1;
}

// Inverse of conformal_tau by Newton iteration.
double geodetic_tau(double taup, double e) {
  const double e2m = 1.0 - e * e;
  double tau = taup / e2m;
  for (int i = 0; i < 8; ++i) {
    const double tp = conformal_tau(tau, e);
    const double dtau = (taup - tp) * (1.0 + e2m * tau * tau) /
                        (e2m * std::hypot(1.0, tau) * std::hypot(1.0, tp));
    tau += dtau;
    if (std::abs(dtau) < 1e-14 * std::max(1.0, std::abs(tau))) {
      break;
    }
  }
  return tau;
}

Point utm_forward(LonLat ll, double lon0, double fe, double fn) {
  const auto& k = krueger();
  const double phi = ll.lat * kDeg;
  const double dl = (ll.lon - lon0) * kDeg;
  const double t = conformal_tau(std::tan(phi), eccentricity());
  const double xi_p = std::atan2(t, std::cos(dl));
  const double eta_p = std::atanh(std::sin(dl) / std::sqrt(1.0 + t * t));
  double e = eta_p, nn = xi_p;
  for (int j = 1; j <= 6; ++j) {
    e += k.alpha[j - 1] * std::cos(2 * j * xi_p) * std::sinh(2 * j * eta_p);
    nn += k.alpha[j - 1] * std::sin(2 * j * xi_p) * std::cosh(2 * j * eta_p);
  }
  return {fe + kUtmScale * k.big_a * e, fn + kUtmScale * k.big_a * nn};
}

LonLat utm_inverse(Point p, double lon0, double fe, double fn) {
  const auto& k = krueger();
  const double xi = (p.y - fn) / (kUtmScale * k.big_a);
  const double eta = (p.x - fe) / (kUtmScale * k.big_a);
  double xi_p = xi, eta_p = eta;
  for (int j = 1; j <= 6; ++j) {
    xi_p -= k.beta[j - 1] * std::sin(2 * j * xi) * std::cosh(2 * j * eta);
    eta_p -= k.beta[j - 1] * std::cos(2 * j * xi) * std::sinh(2 * j * eta);
  }
  const double taup = std::sin(xi_p) / std::hypot(std::sinh(eta_p), std::cos(xi_p));
  const double phi = std::atan(geodetic_tau(taup, eccentricity()));
  const double lon = lon0 + std::atan2(std::sinh(eta_p), std::cos(xi_p)) / kDeg;
  return {lon, phi / kDeg};
}

// Lambert azimuthal equal-area, ellipsoidal form.
struct Laea {
  double e2, e, qp, rq, d, sin_b1, cos_b1;
  double lat0 = 52.0;
  double lon0 = 10.0;
};

double authalic_q(double sin_phi, double e2, double e) {
  return (1.0 - e2) * (sin_phi / (1.0 - e2 * sin_phi * sin_phi) -
                       1.0 / (2.0 * e) * std::log((1.0 - e * sin_phi) / (1.0 + e * sin_phi)));
}

const Laea& laea_3035() {
  static const Laea l = [] {
    Laea p{};
    p.e2 = kF * (2.0 - kF);
    p.e = std::sqrt(p.e2);
    p.qp = authalic_q(1.0, p.e2, p.e);
    p.rq = kA * std::sqrt(p.qp / 2.0);
    const double phi1 = p.lat0 * kDeg;
    const double b1 = std::asin(authalic_q(std::sin(phi1), p.e2, p.e) / p.qp);
    p.sin_b1 = std::sin(b1);
    p.cos_b1 = std::cos(b1);
    const double m1 = std::cos(phi1) / std::sqrt(1.0 - p.e2 * std::sin(phi1) * std::sin(phi1));
    p.d = kA * m1 / (p.rq * p.cos_b1);
    return p;
  }();
  return l;
}

Point laea_forward(LonLat ll, double fe, double fn) {
  const auto& p = laea_3035();
  const double phi = ll.lat * kDeg;
  const double dl = (ll.lon - p.lon0) * kDeg;
  const double beta = std::asin(authalic_q(std::sin(phi), p.e2, p.e) / p.qp);
  const double sb = std::sin(beta), cb = std::cos(beta);
  const double b = p.rq * std::sqrt(2.0 / (1.0 + p.sin_b1 * sb + p.cos_b1 * cb * std::cos(dl)));
  return {fe + b * p.d * cb * std::sin(dl), fn + (b / p.d) * (p.cos_b1 * sb - p.sin_b1 * cb * std::cos(dl))};
}

LonLat laea_inverse(Point pt, double fe, double fn) {
  const auto& p = laea_3035();
  const double x = pt.x - fe;
  const double y = pt.y - fn;
  const double rho = std::hypot(x / p.d, p.d * y);
  if (rho == 0.0) {
    return {p.lon0, p.lat0};
  }
  const double c = 2.0 * std::asin(rho / (2.0 * p.rq));
  const double sc = std::sin(c), cc = std::cos(c);
  const double beta = std::asin(cc * p.sin_b1 + p.d * y * sc * p.cos_b1 / rho);
  const double lon = p.lon0 + std::atan2(x * sc, p.d * p.cos_b1 * cc * rho - p.d * p.d * y * p.sin_b1 * sc) / kDeg;
  // Invert q(phi) = qp * sin(beta) by fixed-point iteration.
  const double q = p.qp * std::sin(beta);
  double phi = beta;
  for (int i = 0; i < 12; ++i) {
    const double s = std::sin(phi);
    const double w = 1.0 - p.e2 * s * s;
    const double step = w * w / (2.0 * std::cos(phi)) * (q / (1.0 - p.e2) - authalic_q(s, p.e2, p.e) / (1.0 - p.e2));
    phi += step;
    if (std::abs(step) < 1e-15) {
      break;
    }
  }
  return {lon, phi / kDeg};
}

}  // namespace

Polygon::Polygon(std::vector<Point> ring) : ring_(std::move(ring)) {
  if (ring_.size() > 1 && ring_.front() == ring_.back()) {
    ring_.pop_back();
  }
  ring_.erase(std::unique(ring_.begin(), ring_.end()), ring_.end());
  if (ring_.size() < 3) {
    throw std::invalid_argument("polygon needs at least three distinct vertices");
  }
  const std::size_t n = ring_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // adjacent edges share a vertex by construction
      if (j == i + 1 || (i == 0 && j == n - 1)) {
        continue;
      }
      if (segments_intersect(ring_[i], ring_[(i + 1) % n], ring_[j], ring_[(j + 1) % n])) {
        throw std::invalid_argument("polygon ring self-intersects");
      }
    }
  }
  bounds_ = {ring_[0].x, ring_[0].y, ring_[0].x, ring_[0].y};
  for (const auto& p : ring_) {
    bounds_.min_x = std::min(bounds_.min_x, p.x);
    bounds_.min_y = std::min(bounds_.min_y, p.y);
    bounds_.max_x = std::max(bounds_.max_x, p.x);
    bounds_.max_y = std::max(bounds_.max_y, p.y);
  }
}

bool Polygon::contains(Point p) const {
  if (ring_.empty() || !bounds_.contains(p)) {
    return false;
  }
  bool inside = false;
  const std::size_t n = ring_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring_[i], b = ring_[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

Projection Projection::from_epsg(int epsg) {
  Projection p;
  p.epsg_ = epsg;
  if (epsg == 3035) {
    p.kind_ = Kind::laea;
    p.false_easting_ = 4321000.0;
    p.false_northing_ = 3210000.0;
    return p;
  }
  const bool north = epsg >= 32601 && epsg <= 32660;
  const bool south = epsg >= 32701 && epsg <= 32760;
  if (!north && !south) {
    throw std::invalid_argument("unsupported EPSG code " + std::to_string(epsg));
  }
  const int zone = epsg % 100;
  p.kind_ = Kind::utm;
  p.lon0_ = -183.0 + 6.0 * zone;
  p.false_easting_ = 500000.0;
  p.false_northing_ = south ? 10000000.0 : 0.0;
  return p;
}

Point Projection::forward(LonLat ll) const {
  if (kind_ == Kind::laea) {
    return laea_forward(ll, false_easting_, false_northing_);
  }
  return utm_forward(ll, lon0_, false_easting_, false_northing_);
}

LonLat Projection::inverse(Point p) const {
  if (kind_ == Kind::laea) {
    return laea_inverse(p, false_easting_, false_northing_);
  }
  return utm_inverse(p, lon0_, false_easting_, false_northing_);
}

}  // namespace hydronoise
