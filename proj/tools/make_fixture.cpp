// SPDX-License-Identifier: Apache-2.0
//
// Writes the bundled demo inputs: three trawlers sailing out of a port on a
// straight coast, a depth raster, two hydrophone stations and a config file.
// Output is byte-identical for a given seed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hydronoise/geometry.hpp"
#include "hydronoise/ingest.hpp"
#include "hydronoise/time.hpp"

using namespace hydronoise;
namespace fs = std::filesystem;

namespace {

constexpr int kEpsg = 32633;
constexpr Point kPort{378973.0, 4830761.0};  // Ancona
constexpr Point kCoastPoint{379000.0, 4830500.0};
constexpr double kCoastSlope = 0.8;

// Signed distance to the coastline, positive at sea (north-east).
double offshore_m(Point p) {
  return ((p.y - kCoastPoint.y) + kCoastSlope * (p.x - kCoastPoint.x)) / std::sqrt(1.0 + kCoastSlope * kCoastSlope);
}

struct Fix {
  Instant t;
  Point p;
  double sog;
  double cog;
};

class Voyage {
 public:
  Voyage(std::mt19937_64& rng, Instant start) : rng_(rng), t_(start), p_(kPort) {}

  void dwell(std::int64_t seconds) {
    const Instant until = t_ + seconds;
    while (t_ < until) {
      emit(0.0, heading_);
      t_ = t_ + 60;
    }
  }

  void run(double speed_kn, std::int64_t seconds, double heading, double wander) {
    heading_ = heading;
    const Instant until = t_ + seconds;
    while (t_ < until) {
      advance(speed_kn, wander);
    }
  }

  void return_to_port(double speed_kn) {
    while (distance(p_, kPort) > 250.0) {
      heading_ = std::atan2(kPort.y - p_.y, kPort.x - p_.x);
      advance(speed_kn, 0.0);
    }
    p_ = kPort;
  }

  const std::vector<Fix>& fixes() const { return fixes_; }

 private:
  void advance(double speed_kn, double wander) {
    const double v = speed_kn * (1.0 + std::uniform_real_distribution<double>(-0.05, 0.05)(rng_));
    emit(v, heading_);
    const std::int64_t dt = std::uniform_int_distribution<std::int64_t>(20, 90)(rng_);
    heading_ += std::uniform_real_distribution<double>(-wander, wander)(rng_);
    const double step = v * kMetresPerNauticalMile / 3600.0 * static_cast<double>(dt);
    p_ = {p_.x + step * std::cos(heading_), p_.y + step * std::sin(heading_)};
    t_ = t_ + dt;
  }

  void emit(double sog, double heading) {
    const double cog = std::fmod(90.0 - heading * 180.0 / std::numbers::pi + 720.0, 360.0);
    fixes_.push_back({t_, p_, sog, cog});
  }

  std::mt19937_64& rng_;
  Instant t_;
  Point p_;
  double heading_ = 0.9;
  std::vector<Fix> fixes_;
};

void write_config(const fs::path& dir) {
  std::ofstream out(dir / "hydronoise.ini");
  out << "# Demo configuration for the bundled fixture (June 2020, off Ancona).\n"
         "[paths]\n"
         "ais = ais.csv\n"
         "registry = registry.csv\n"
         "ports = ports.geojson\n"
         "bathymetry = bathymetry.asc\n"
         "stations = stations.csv\n"
         "output = out\n"
         "\n"
         "[grid]\n"
         "origin_x = 370000\n"
         "origin_y = 4825000\n"
         "n_cols = 40\n"
         "n_rows = 30\n"
         "cell_m = 1000\n"
         "epsg = 32633\n"
         "\n"
         "[thresholds]\n"
         "fish_min_kn = 1.0\n"
         "fish_max_kn = 6.0\n"
         "gap_s = 1800\n"
         "idw_power = 2\n"
         "\n"
         "[sampling]\n"
         "period_s = 60\n"
         "\n"
         "[run]\n"
         "frequencies = 63,125,400,4000\n";
}

void write_bathymetry(const fs::path& dir) {
  constexpr double x0 = 365000.0, y0 = 4820000.0, cell = 500.0;
  constexpr int ncols = 100, nrows = 80;
  std::ofstream out(dir / "bathymetry.asc");
  out << "ncols " << ncols << "\nnrows " << nrows << "\nxllcorner " << x0 << "\nyllcorner " << y0
      << "\ncellsize " << cell << "\nNODATA_value -9999\n";
  char buf[32];
  for (int r = 0; r < nrows; ++r) {
    const double y = y0 + (nrows - r - 0.5) * cell;
    for (int c = 0; c < ncols; ++c) {
      const double s = offshore_m({x0 + (c + 0.5) * cell, y});
      if (s <= 0.0) {
        out << (c ? " " : "") << -9999;
      } else {
        std::snprintf(buf, sizeof buf, "%.1f", std::min(5.0 + 0.004 * s, 90.0));
        out << (c ? " " : "") << buf;
      }
    }
    out << '\n';
  }
}

void write_ports(const fs::path& dir, const Projection& proj) {
  std::ofstream out(dir / "ports.geojson");
  const double h = 800.0;
  const Point ring[] = {{kPort.x - h, kPort.y - h}, {kPort.x + h, kPort.y - h}, {kPort.x + h, kPort.y + h},
                        {kPort.x - h, kPort.y + h}, {kPort.x - h, kPort.y - h}};
  out << R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{"name":"Ancona"},)"
      << R"("geometry":{"type":"Polygon","coordinates":[[)";
  char buf[64];
  for (int i = 0; i < 5; ++i) {
    const auto ll = proj.inverse(ring[i]);
    std::snprintf(buf, sizeof buf, "%s[%.7f,%.7f]", i ? "," : "", ll.lon, ll.lat);
    out << buf;
  }
  out << "]]}}]}\n";
}

void write_stations(const fs::path& dir, const Projection& proj) {
  struct Station {
    const char* name;
    Point p;
    double l90[4];
  };
  const Station stations[] = {
      {"ANC-OFF", {386000.0, 4838000.0}, {60.78, 62.40, 63.10, 68.30}},
      {"MID-ADR", {404000.0, 4851000.0}, {71.20, 69.80, 66.50, 71.90}},
  };
  const int freqs[] = {63, 125, 400, 4000};
  std::ofstream out(dir / "stations.csv");
  out << "name,lon,lat,frequency_hz,month,l90_db\n";
  char buf[160];
  for (const auto& s : stations) {
    const auto ll = proj.inverse(s.p);
    for (int k = 0; k < 4; ++k) {
      std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%d,2020-06,%.2f\n", s.name, ll.lon, ll.lat, freqs[k], s.l90[k]);
      out << buf;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("data/fixture");
  fs::create_directories(dir);
  const auto proj = Projection::from_epsg(kEpsg);
  std::mt19937_64 rng(20200601);

  struct Vessel {
    std::uint32_t mmsi;
    const char* name;
    double loa;
    double hp;
    const char* gear;
    double heading_deg;
  };
  const Vessel fleet[] = {
      {247100001, "VESSEL A", 23.5, 590.9, "OTB", 35.0},
      {247100002, "VESSEL B", 24.8, 613.0, "OTB", 50.0},
      {247100003, "VESSEL C", 26.1, 649.9, "TBB", 65.0},
  };

  {
    std::ofstream reg(dir / "registry.csv");
    reg << "mmsi,name,loa_m,engine_hp,gear\n";
    for (const auto& v : fleet) {
      reg << v.mmsi << ',' << v.name << ',' << v.loa << ',' << v.hp << ',' << v.gear << '\n';
    }
    reg << "247100004,VESSEL D,14.2,215.7,PTM\n";
  }

  std::ofstream ais(dir / "ais.csv");
  ais << "mmsi,timestamp_iso8601,lon,lat,sog_kn,cog_deg\n";
  const Instant day0{1590969600};  // 2020-06-01T00:00:00Z
  char buf[160];
  for (std::size_t i = 0; i < std::size(fleet); ++i) {
    const auto& v = fleet[i];
    for (int day = 0; day < 2; ++day) {
      Voyage voyage(rng, day0 + day * 86400 + 4 * 3600 + static_cast<std::int64_t>(i) * 1200);
      const double heading = v.heading_deg * std::numbers::pi / 180.0;
      voyage.dwell(600);
      voyage.run(9.0, 40 * 60, heading, 0.02);
      voyage.run(3.0, 90 * 60, heading + 1.2, 0.25);
      voyage.return_to_port(10.0);
      voyage.dwell(600);
      for (const auto& f : voyage.fixes()) {
        const auto ll = proj.inverse(f.p);
        const bool drop_sog = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.1;
        std::string sog;
        if (!drop_sog) {
          std::snprintf(buf, sizeof buf, "%.1f", f.sog);
          sog = buf;
        }
        std::snprintf(buf, sizeof buf, "%u,%s,%.6f,%.6f,%s,%.1f\n", v.mmsi, format_iso8601(f.t).c_str(), ll.lon,
                      ll.lat, sog.c_str(), f.cog);
        ais << buf;
      }
    }
  }

  write_bathymetry(dir);
  write_ports(dir, proj);
  write_stations(dir, proj);
  write_config(dir);
  std::printf("fixture written to %s\n", dir.string().c_str());
  return 0;
}
