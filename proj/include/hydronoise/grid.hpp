// SPDX-License-Identifier: Apache-2.0
//
// The spatial lattice: square cells on a projected plane, their depths,
// absorption layers and monthly ambient-noise surfaces.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hydronoise/geometry.hpp"
#include "hydronoise/time.hpp"

namespace hydronoise {

using CellId = std::uint32_t;

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  Point origin;  ///< south-west corner, projected metres
  int n_cols = 0;
  int n_rows = 0;
  double cell_size = 1000.0;
  int epsg = 32633;

  std::size_t cell_count() const { return static_cast<std::size_t>(n_cols) * static_cast<std::size_t>(n_rows); }
  Extent extent() const {
    return {origin.x, origin.y, origin.x + n_cols * cell_size, origin.y + n_rows * cell_size};
  }
  /// Stable fingerprint of the lattice geometry.
  std::uint64_t hash() const;
  void validate() const;
};

struct Cell {
  CellId id = 0;
  Point centroid;
  double depth = 0.0;
};

/// Depth source. Positive values are water depth; anything else is land.
class Bathymetry {
 public:
  virtual ~Bathymetry() = default;
  virtual std::optional<double> depth_at(Point p) const = 0;
  virtual Extent extent() const = 0;
};

/// Scattered soundings sampled by nearest point.
class PointCloudBathymetry final : public Bathymetry {
 public:
  explicit PointCloudBathymetry(std::vector<std::pair<Point, double>> soundings);

  /// CSV `lon,lat,depth_m`.
  static PointCloudBathymetry from_csv(std::istream& in, const Projection& proj);

  std::optional<double> depth_at(Point p) const override;
  Extent extent() const override { return extent_; }

 private:
  std::vector<std::pair<Point, double>> soundings_;
  Extent extent_;
  double bucket_ = 1.0;
  int cols_ = 1;
  int rows_ = 1;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

/// Single-band raster in ESRI ASCII grid format, georeferenced in the grid's
/// projected coordinates. Sampled by nearest pixel.
class RasterBathymetry final : public Bathymetry {
 public:
  static RasterBathymetry from_ascii_grid(std::istream& in);

  std::optional<double> depth_at(Point p) const override;
  Extent extent() const override;

 private:
  int ncols_ = 0;
  int nrows_ = 0;
  Point lower_left_;
  double cellsize_ = 1.0;
  std::optional<double> nodata_;
  std::vector<double> values_;  // row 0 is the northernmost row
};

/// Sea cells of a lattice plus their per-frequency layers.
class Grid {
 public:
  Grid(GridSpec spec, std::vector<Cell> sea_cells);

  const GridSpec& spec() const { return spec_; }
  std::span<const Cell> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  /// Lattice cell containing p (land or sea), nullopt outside the extent.
  std::optional<CellId> cell_id_at(Point p) const;
  /// Index into cells() of a sea cell, nullopt for land.
  std::optional<std::size_t> sea_index(CellId id) const;
  Point centroid_of(CellId id) const;
  /// Corners counter-clockwise from south-west.
  std::array<Point, 4> corners_of(CellId id) const;

  void set_alpha(int frequency_hz, std::vector<double> per_cell);
  /// nullptr when no per-cell layer was supplied.
  const std::vector<double>* alpha(int frequency_hz) const;

  void set_ambient(int frequency_hz, YearMonth month, std::vector<double> per_cell);
  const std::vector<double>* ambient(int frequency_hz, YearMonth month) const;

 private:
  GridSpec spec_;
  std::vector<Cell> cells_;
  std::vector<std::int32_t> sea_index_;
  std::map<int, std::vector<double>> alpha_;
  std::map<std::pair<int, YearMonth>, std::vector<double>> ambient_;
};

/// Samples depth at every centroid; cells with depth <= 0 or no data are
/// dropped. Throws GridError when the bathymetry does not cover the lattice.
Grid build_grid(const GridSpec& spec, const Bathymetry& bathymetry);

struct HydrophoneStation {
  std::string name;
  Point position;
  std::map<std::pair<int, YearMonth>, double> l90_db;
};

/// CSV `name,lon,lat,frequency_hz,month,l90_db`, month as `YYYY-MM`.
std::vector<HydrophoneStation> parse_stations(std::istream& in, const Projection& proj);

/// Level exceeded 90% of the time: the 10th percentile with linear
/// interpolation between closest ranks. Throws on an empty series.
double l90(std::span<const double> spl_db);

/// Inverse-distance-weighted ambient surface for one (frequency, month),
/// stored on the grid and returned. Cells holding a station take its value
/// directly. Throws GridError when no station has data for the key.
const std::vector<double>& idw_ambient(std::span<const HydrophoneStation> stations, Grid& grid, int frequency_hz,
                                       YearMonth month, double power = 2.0);

}  // namespace hydronoise
