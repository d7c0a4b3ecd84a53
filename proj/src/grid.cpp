// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "csv.hpp"
#include "hydronoise/hash.hpp"

namespace hydronoise {

// ---------------------------------------------------------------------------
// GridSpec

std::uint64_t GridSpec::hash() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "grid:%.6f,%.6f,%d,%d,%.6f,%d", origin.x, origin.y, n_cols, n_rows, cell_size, epsg);
  return fnv1a64(buf);
}

void GridSpec::validate() const {
  if (n_cols <= 0 || n_rows <= 0) {
    throw GridError("grid needs positive column and row counts");
  }
  if (!(cell_size > 0.0)) {
    throw GridError("grid cell size must be positive");
  }
  if (cell_count() > std::numeric_limits<CellId>::max()) {
    throw GridError("grid has too many cells for 32-bit ids");
  }
}

// ---------------------------------------------------------------------------
// Bathymetry sources

PointCloudBathymetry::PointCloudBathymetry(std::vector<std::pair<Point, double>> soundings)
    : soundings_(std::move(soundings)) {
  if (soundings_.empty()) {
    throw GridError("bathymetry has no soundings");
  }
  extent_ = {soundings_[0].first.x, soundings_[0].first.y, soundings_[0].first.x, soundings_[0].first.y};
  for (const auto& [p, _] : soundings_) {
    extent_.min_x = std::min(extent_.min_x, p.x);
    extent_.min_y = std::min(extent_.min_y, p.y);
    extent_.max_x = std::max(extent_.max_x, p.x);
    extent_.max_y = std::max(extent_.max_y, p.y);
  }
  // about two soundings per bucket
  const double w = std::max(extent_.max_x - extent_.min_x, 1.0);
  const double h = std::max(extent_.max_y - extent_.min_y, 1.0);
  bucket_ = std::max(std::sqrt(2.0 * w * h / static_cast<double>(soundings_.size())), 1.0);
  cols_ = static_cast<int>(w / bucket_) + 1;
  rows_ = static_cast<int>(h / bucket_) + 1;
  buckets_.resize(static_cast<std::size_t>(cols_) * rows_);
  for (std::uint32_t i = 0; i < soundings_.size(); ++i) {
    const auto& p = soundings_[i].first;
    const int c = static_cast<int>((p.x - extent_.min_x) / bucket_);
    const int r = static_cast<int>((p.y - extent_.min_y) / bucket_);
    buckets_[static_cast<std::size_t>(r) * cols_ + c].push_back(i);
  }
}

PointCloudBathymetry PointCloudBathymetry::from_csv(std::istream& in, const Projection& proj) {
  std::vector<std::pair<Point, double>> soundings;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto f = csv::split(line);
    if (!header) {
      if (!csv::header_matches(f, {"lon", "lat", "depth_m"})) {
        throw GridError("bathymetry: unexpected header");
      }
      header = true;
      continue;
    }
    std::optional<double> lon, lat, depth;
    if (f.size() == 3) {
      lon = csv::to_double(f[0]);
      lat = csv::to_double(f[1]);
      depth = csv::to_double(f[2]);
    }
    if (!lon || !lat || !depth) {
      throw GridError("bathymetry: malformed row on line " + std::to_string(line_no));
    }
    soundings.emplace_back(proj.forward({*lon, *lat}), *depth);
  }
  return PointCloudBathymetry(std::move(soundings));
}

std::optional<double> PointCloudBathymetry::depth_at(Point p) const {
  const int pc = std::clamp(static_cast<int>(std::floor((p.x - extent_.min_x) / bucket_)), 0, cols_ - 1);
  const int pr = std::clamp(static_cast<int>(std::floor((p.y - extent_.min_y) / bucket_)), 0, rows_ - 1);
  double best = std::numeric_limits<double>::infinity();
  std::optional<std::uint32_t> best_i;
  const int max_ring = std::max(cols_, rows_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    // any sounding in a ring >= `ring` lies at least (ring-1)*bucket away
    if (best_i && (ring - 1) * bucket_ > best) {
      break;
    }
    for (int r = pr - ring; r <= pr + ring; ++r) {
      if (r < 0 || r >= rows_) continue;
      for (int c = pc - ring; c <= pc + ring; ++c) {
        if (c < 0 || c >= cols_) continue;
        if (std::max(std::abs(r - pr), std::abs(c - pc)) != ring) continue;
        for (std::uint32_t i : buckets_[static_cast<std::size_t>(r) * cols_ + c]) {
          const double d = distance(p, soundings_[i].first);
          if (d < best || (d == best && best_i && i < *best_i)) {
            best = d;
            best_i = i;
          }
        }
      }
    }
  }
  if (!best_i) {
    return std::nullopt;
  }
  return soundings_[*best_i].second;
}

RasterBathymetry RasterBathymetry::from_ascii_grid(std::istream& in) {
  RasterBathymetry r;
  bool center = false;
  double xll = 0, yll = 0;
  int seen = 0;
  std::string key;
  while (seen < 5 || (in >> std::ws && std::isalpha(in.peek()))) {
    if (!(in >> key)) {
      throw GridError("raster: truncated header");
    }
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    double value = 0;
    if (!(in >> value)) {
      throw GridError("raster: bad header value for " + key);
    }
    if (key == "ncols") r.ncols_ = static_cast<int>(value);
    else if (key == "nrows") r.nrows_ = static_cast<int>(value);
    else if (key == "xllcorner") xll = value;
    else if (key == "yllcorner") yll = value;
    else if (key == "xllcenter") { xll = value; center = true; }
    else if (key == "yllcenter") { yll = value; center = true; }
    else if (key == "cellsize") r.cellsize_ = value;
    else if (key == "nodata_value") { r.nodata_ = value; continue; }
    else throw GridError("raster: unknown header key " + key);
    ++seen;
  }
  if (r.ncols_ <= 0 || r.nrows_ <= 0 || !(r.cellsize_ > 0)) {
    throw GridError("raster: invalid dimensions");
  }
  if (center) {
    xll -= r.cellsize_ / 2;
    yll -= r.cellsize_ / 2;
  }
  r.lower_left_ = {xll, yll};
  const std::size_t n = static_cast<std::size_t>(r.ncols_) * r.nrows_;
  r.values_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> r.values_[i])) {
      throw GridError("raster: expected " + std::to_string(n) + " values");
    }
  }
  return r;
}

Extent RasterBathymetry::extent() const {
  return {lower_left_.x, lower_left_.y, lower_left_.x + ncols_ * cellsize_, lower_left_.y + nrows_ * cellsize_};
}

std::optional<double> RasterBathymetry::depth_at(Point p) const {
  const int c = static_cast<int>(std::floor((p.x - lower_left_.x) / cellsize_));
  const int row_from_south = static_cast<int>(std::floor((p.y - lower_left_.y) / cellsize_));
  if (c < 0 || c >= ncols_ || row_from_south < 0 || row_from_south >= nrows_) {
    return std::nullopt;
  }
  const double v = values_[static_cast<std::size_t>(nrows_ - 1 - row_from_south) * ncols_ + c];
  if (nodata_ && v == *nodata_) {
    return std::nullopt;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(GridSpec spec, std::vector<Cell> sea_cells) : spec_(spec), cells_(std::move(sea_cells)) {
  spec_.validate();
  std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  sea_index_.assign(spec_.cell_count(), -1);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].id >= spec_.cell_count()) {
      throw GridError("cell id outside the lattice");
    }
    if (sea_index_[cells_[i].id] != -1) {
      throw GridError("duplicate cell id");
    }
    sea_index_[cells_[i].id] = static_cast<std::int32_t>(i);
  }
}

std::optional<CellId> Grid::cell_id_at(Point p) const {
  const double fx = std::floor((p.x - spec_.origin.x) / spec_.cell_size);
  const double fy = std::floor((p.y - spec_.origin.y) / spec_.cell_size);
  if (!(fx >= 0 && fy >= 0 && fx < spec_.n_cols && fy < spec_.n_rows)) {
    return std::nullopt;
  }
  return static_cast<CellId>(static_cast<std::int64_t>(fy) * spec_.n_cols + static_cast<std::int64_t>(fx));
}

std::optional<std::size_t> Grid::sea_index(CellId id) const {
  if (id >= sea_index_.size() || sea_index_[id] < 0) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(sea_index_[id]);
}

Point Grid::centroid_of(CellId id) const {
  const auto col = id % static_cast<CellId>(spec_.n_cols);
  const auto row = id / static_cast<CellId>(spec_.n_cols);
  return {spec_.origin.x + (col + 0.5) * spec_.cell_size, spec_.origin.y + (row + 0.5) * spec_.cell_size};
}

std::array<Point, 4> Grid::corners_of(CellId id) const {
  const Point c = centroid_of(id);
  const double h = spec_.cell_size / 2;
  return {{{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}}};
}

void Grid::set_alpha(int frequency_hz, std::vector<double> per_cell) {
  if (per_cell.size() != cells_.size()) {
    throw GridError("absorption layer size does not match the sea cells");
  }
  alpha_[frequency_hz] = std::move(per_cell);
}

const std::vector<double>* Grid::alpha(int frequency_hz) const {
  auto it = alpha_.find(frequency_hz);
  return it == alpha_.end() ? nullptr : &it->second;
}

void Grid::set_ambient(int frequency_hz, YearMonth month, std::vector<double> per_cell) {
  if (per_cell.size() != cells_.size()) {
    throw GridError("ambient surface size does not match the sea cells");
  }
  ambient_[{frequency_hz, month}] = std::move(per_cell);
}

const std::vector<double>* Grid::ambient(int frequency_hz, YearMonth month) const {
  auto it = ambient_.find({frequency_hz, month});
  return it == ambient_.end() ? nullptr : &it->second;
}

Grid build_grid(const GridSpec& spec, const Bathymetry& bathymetry) {
  spec.validate();
  const double h = spec.cell_size / 2;
  const Extent full = spec.extent();
  const Extent centroids{full.min_x + h, full.min_y + h, full.max_x - h, full.max_y - h};
  if (!bathymetry.extent().contains(centroids)) {
    throw GridError("bathymetry does not cover the grid extent");
  }
  std::vector<Cell> cells;
  for (int row = 0; row < spec.n_rows; ++row) {
    for (int col = 0; col < spec.n_cols; ++col) {
      const CellId id = static_cast<CellId>(row) * static_cast<CellId>(spec.n_cols) + static_cast<CellId>(col);
      const Point c{spec.origin.x + (col + 0.5) * spec.cell_size, spec.origin.y + (row + 0.5) * spec.cell_size};
      auto depth = bathymetry.depth_at(c);
      if (depth && *depth > 0.0) {
        cells.push_back({id, c, *depth});
      }
    }
  }
  return Grid(spec, std::move(cells));
}

// ---------------------------------------------------------------------------
// Ambient noise

std::vector<HydrophoneStation> parse_stations(std::istream& in, const Projection& proj) {
  std::vector<HydrophoneStation> stations;
  std::unordered_map<std::string, std::size_t> by_name;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto f = csv::split(line);
    if (!header) {
      if (!csv::header_matches(f, {"name", "lon", "lat", "frequency_hz", "month", "l90_db"})) {
        throw GridError("stations: unexpected header");
      }
      header = true;
      continue;
    }
    if (f.size() != 6) {
      throw GridError("stations: malformed row on line " + std::to_string(line_no));
    }
    auto lon = csv::to_double(f[1]);
    auto lat = csv::to_double(f[2]);
    auto freq = csv::to_int<int>(f[3]);
    auto month = parse_year_month(f[4]);
    auto level = csv::to_double(f[5]);
    if (!lon || !lat || !freq || !month || !level || !std::isfinite(*level)) {
      throw GridError("stations: malformed row on line " + std::to_string(line_no));
    }
    auto [it, inserted] = by_name.try_emplace(f[0], stations.size());
    if (inserted) {
      stations.push_back({f[0], proj.forward({*lon, *lat}), {}});
    }
    stations[it->second].l90_db[{*freq, *month}] = *level;
  }
  if (!header) {
    throw GridError("stations: empty file");
  }
  return stations;
}

double l90(std::span<const double> spl_db) {
  if (spl_db.empty()) {
    throw std::invalid_argument("L90 of an empty series");
  }
  std::vector<double> v(spl_db.begin(), spl_db.end());
  std::sort(v.begin(), v.end());
  const double pos = 0.1 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
}

const std::vector<double>& idw_ambient(std::span<const HydrophoneStation> stations, Grid& grid, int frequency_hz,
                                       YearMonth month, double power) {
  struct Source {
    Point position;
    double value;
  };
  std::vector<Source> sources;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::map<std::size_t, std::pair<double, int>> seeded;  // sea index -> (sum, count)
  for (const auto& s : stations) {
    auto it = s.l90_db.find({frequency_hz, month});
    if (it == s.l90_db.end()) continue;
    sources.push_back({s.position, it->second});
    lo = std::min(lo, it->second);
    hi = std::max(hi, it->second);
    if (auto id = grid.cell_id_at(s.position)) {
      if (auto idx = grid.sea_index(*id)) {
        auto& acc = seeded[*idx];
        acc.first += it->second;
        acc.second += 1;
      }
    }
  }
  if (sources.empty()) {
    throw GridError("no station has an L90 value for " + std::to_string(frequency_hz) + " Hz in " +
                    format_year_month(month));
  }

  const auto cells = grid.cells();
  std::vector<double> surface(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (auto it = seeded.find(i); it != seeded.end()) {
      surface[i] = it->second.first / it->second.second;
      continue;
    }
    double num = 0.0, den = 0.0;
    std::optional<double> exact;
    for (const auto& src : sources) {
      const double d = distance(cells[i].centroid, src.position);
      if (d == 0.0) {
        exact = src.value;
        break;
      }
      const double w = std::pow(d, -power);
      num += w * src.value;
      den += w;
    }
    // the weighted mean is convex; clamp away rounding past the hull
    surface[i] = exact ? *exact : std::clamp(num / den, lo, hi);
  }
  grid.set_ambient(frequency_hz, month, std::move(surface));
  return *grid.ambient(frequency_hz, month);
}

}  // namespace hydronoise
