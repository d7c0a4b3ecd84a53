// SPDX-License-Identifier: Apache-2.0
#include "hydronoise/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <thread>

namespace hydronoise {

// ---------------------------------------------------------------------------
// SpatialIndex

SpatialIndex::SpatialIndex(std::span<const Point> points, Point origin, double bucket_size, int n_cols, int n_rows)
    : points_(points.begin(), points.end()), origin_(origin), bucket_(bucket_size), n_cols_(n_cols), n_rows_(n_rows) {
  if (!(bucket_size > 0.0) || n_cols <= 0 || n_rows <= 0) {
    throw std::invalid_argument("spatial index needs a positive bucket size and extent");
  }
  const std::size_t n_buckets = static_cast<std::size_t>(n_cols) * static_cast<std::size_t>(n_rows);
  std::vector<std::size_t> bucket_of(points_.size());
  bucket_start_.assign(n_buckets + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const int c = std::clamp(static_cast<int>(std::floor((points_[i].x - origin.x) / bucket_size)), 0, n_cols - 1);
    const int r = std::clamp(static_cast<int>(std::floor((points_[i].y - origin.y) / bucket_size)), 0, n_rows - 1);
    bucket_of[i] = static_cast<std::size_t>(r) * static_cast<std::size_t>(n_cols) + c;
    ++bucket_start_[bucket_of[i] + 1];
  }
  for (std::size_t b = 0; b < n_buckets; ++b) {
    bucket_start_[b + 1] += bucket_start_[b];
  }
  entries_.resize(points_.size());
  std::vector<std::uint32_t> fill(bucket_start_.begin(), bucket_start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    entries_[fill[bucket_of[i]]++] = static_cast<std::uint32_t>(i);
  }
}

std::size_t SpatialIndex::visit_bound(double radius, double bucket_size) {
  const double grown = radius + std::numbers::sqrt2 * bucket_size;
  return static_cast<std::size_t>(std::ceil(std::numbers::pi * grown * grown / (bucket_size * bucket_size)));
}

SpatialIndex make_centroid_index(const Grid& grid) {
  std::vector<Point> centroids;
  centroids.reserve(grid.size());
  for (const auto& c : grid.cells()) {
    centroids.push_back(c.centroid);
  }
  const auto& s = grid.spec();
  return SpatialIndex(centroids, s.origin, s.cell_size, s.n_cols, s.n_rows);
}

// ---------------------------------------------------------------------------
// NoiseField

namespace {

bool entry_less(const FieldEntry& a, const FieldEntry& b) {
  return a.epoch_minute != b.epoch_minute ? a.epoch_minute < b.epoch_minute : a.cell_id < b.cell_id;
}

bool same_key(const FieldEntry& a, const FieldEntry& b) {
  return a.epoch_minute == b.epoch_minute && a.cell_id == b.cell_id;
}

}  // namespace

void NoiseField::assign_intensities(std::vector<FieldEntry> entries) {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (!entry_less(entries[i - 1], entries[i])) {
      throw EngineError("field entries must be sorted by (minute, cell) without duplicates");
    }
  }
  entries_ = std::move(entries);
  finalized_ = false;
}

void NoiseField::merge(const NoiseField& other) {
  if (finalized_ || other.finalized_) {
    throw EngineError("cannot merge finalized fields");
  }
  if (frequency_hz_ != other.frequency_hz_ || grid_hash_ != other.grid_hash_) {
    throw EngineError("cannot merge fields of different frequency or grid");
  }
  std::vector<FieldEntry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && entry_less(*a, *b))) {
      out.push_back(*a++);
    } else if (a == entries_.end() || entry_less(*b, *a)) {
      out.push_back(*b++);
    } else {
      out.push_back({a->cell_id, a->epoch_minute, a->level + b->level});
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
  window_.begin = std::min(window_.begin, other.window_.begin);
  window_.end = std::max(window_.end, other.window_.end);
}

void NoiseField::finalize() {
  if (finalized_) {
    return;
  }
  for (auto& e : entries_) {
    e.level = intensity_to_db(e.level);
  }
  finalized_ = true;
}

std::optional<double> NoiseField::at(CellId cell, std::uint32_t epoch_minute) const {
  const FieldEntry key{cell, epoch_minute, 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, entry_less);
  if (it == entries_.end() || !same_key(*it, key)) {
    return std::nullopt;
  }
  return it->level;
}

NoiseField NoiseField::from_levels(int frequency_hz, std::uint64_t grid_hash, TimeWindow window,
                                   std::vector<FieldEntry> db_entries) {
  NoiseField f(frequency_hz, grid_hash, window);
  f.assign_intensities(std::move(db_entries));
  f.finalized_ = true;
  return f;
}

// ---------------------------------------------------------------------------
// Propagation

namespace {

struct MinuteRange {
  std::int64_t first = 0;
  std::int64_t last = -1;
};

MinuteRange minutes_of(TimeWindow window) {
  auto floor_div = [](std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
  MinuteRange r;
  r.first = -floor_div(-window.begin.epoch_seconds, kSamplingPeriodS);
  r.last = floor_div(window.end.epoch_seconds, kSamplingPeriodS);
  if (r.first < 0 || r.last > std::numeric_limits<std::uint32_t>::max()) {
    throw EngineError("window outside the representable minute range");
  }
  return r;
}

// Everything a run needs besides the trips, resolved once.
struct RunContext {
  const Grid& grid;
  const FrequencyParams& fp;
  SoundContext sound;
  MinuteRange minutes;
  std::vector<double> alpha;
  std::map<YearMonth, const std::vector<double>*> ambient;
  std::vector<const EnrichedTrip*> trips;
  std::vector<double> sl0;

  const std::vector<double>& ambient_for(Instant t) const { return *ambient.at(year_month_of(t)); }
};

RunContext prepare(std::span<const EnrichedTrip> trips, const Grid& grid, const FrequencyParams& fp,
                   TimeWindow window, const SoundContext& sound, bool canonical_order) {
  RunContext ctx{grid, fp, sound, minutes_of(window), {}, {}, {}, {}};
  if (const auto* layer = grid.alpha(fp.frequency_hz)) {
    ctx.alpha = *layer;
  } else {
    ctx.alpha.assign(grid.size(), fp.alpha_db_per_m);
  }
  for (std::int64_t m = ctx.minutes.first; m <= ctx.minutes.last;) {
    const Instant t{m * kSamplingPeriodS};
    const YearMonth ym = year_month_of(t);
    const auto* surface = grid.ambient(fp.frequency_hz, ym);
    if (!surface) {
      throw EngineError("no ambient surface for " + std::to_string(fp.frequency_hz) + " Hz in " +
                        format_year_month(ym));
    }
    ctx.ambient[ym] = surface;
    // jump to the first minute of the next day; months change only at midnight
    m = (start_of(day_of(t) + std::chrono::days{1}).epoch_seconds) / kSamplingPeriodS;
  }
  for (const auto& t : trips) {
    ctx.trips.push_back(&t);
  }
  if (canonical_order) {
    std::stable_sort(ctx.trips.begin(), ctx.trips.end(), [](const EnrichedTrip* a, const EnrichedTrip* b) {
      return std::pair(a->trip.mmsi, a->trip.trip_id) < std::pair(b->trip.mmsi, b->trip.trip_id);
    });
  }
  for (const auto* t : ctx.trips) {
    auto it = t->source.sl0_db.find(fp.frequency_hz);
    if (it == t->source.sl0_db.end()) {
      throw EngineError("trip " + std::to_string(t->trip.trip_id) + " of vessel " +
                        std::to_string(static_cast<std::uint32_t>(t->trip.mmsi)) + " has no SL0 at " +
                        std::to_string(fp.frequency_hz) + " Hz");
    }
    ctx.sl0.push_back(it->second);
  }
  return ctx;
}

struct Source {
  Point position;
  double sl = 0.0;
  double r_trans = 0.0;
  double radius = 0.0;
};

// Lines 3-13 of the per-instant loop: position, containing cell, source
// level, transition range and radius.
std::optional<Source> locate_source(const RunContext& ctx, std::size_t trip_index, Instant t, EngineReport& rep) {
  const Trip& trip = ctx.trips[trip_index]->trip;
  auto pos = trip.trip.value_at(t);
  if (!pos) {
    return std::nullopt;
  }
  auto id = ctx.grid.cell_id_at(*pos);
  if (!id) {
    ++rep.outside_grid;
    return std::nullopt;
  }
  auto idx = ctx.grid.sea_index(*id);
  if (!idx) {
    ++rep.missing_depth;
    return std::nullopt;
  }
  const double speed = trip.speed.value_at(t).value_or(0.0);
  const bool fishing = trip.activity.value_at(t).value_or(-1) == static_cast<int>(Activity::fishing);
  Source s;
  s.position = *pos;
  s.sl = source_level(ctx.sl0[trip_index], speed, fishing, ctx.fp, ctx.sound);
  s.r_trans = ctx.grid.cells()[*idx].depth * ctx.fp.trans_mult;
  s.radius = propagation_radius(s.sl, s.r_trans, ctx.ambient_for(t)[*idx]);
  ++rep.instants_evaluated;
  rep.max_radius_m = std::max(rep.max_radius_m, s.radius);
  return s;
}

// Lines 15-21 for one receiving cell.
inline double received_intensity(const Source& s, double dist, double alpha, double ambient) {
  const double d = std::max(dist, kMinDistanceM);
  const double rl = s.sl - detail::spreading_loss(d, s.r_trans) - alpha * d - ambient;
  return db_to_intensity(rl);
}

// Dense per-minute accumulator reused across minutes.
class MinuteAccumulator {
 public:
  explicit MinuteAccumulator(std::size_t n_cells) : acc_(n_cells, 0.0) {}

  void add(std::size_t idx, double intensity) {
    if (acc_[idx] == 0.0) {
      touched_.push_back(static_cast<std::uint32_t>(idx));
    }
    acc_[idx] += intensity;
  }

  void flush(std::uint32_t minute, std::span<const Cell> cells, std::vector<FieldEntry>& out) {
    std::sort(touched_.begin(), touched_.end());
    for (std::uint32_t idx : touched_) {
      // underflowed contributions leave 0.0 behind; those cells stay absent
      if (acc_[idx] > 0.0) {
        out.push_back({cells[idx].id, minute, acc_[idx]});
      }
      acc_[idx] = 0.0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> acc_;
  std::vector<std::uint32_t> touched_;
};

void merge_report(EngineReport& into, const EngineReport& from) {
  into.instants_evaluated += from.instants_evaluated;
  into.outside_grid += from.outside_grid;
  into.missing_depth += from.missing_depth;
  into.contributions += from.contributions;
  into.centroid_visits += from.centroid_visits;
  into.visit_bound += from.visit_bound;
  into.max_radius_m = std::max(into.max_radius_m, from.max_radius_m);
}

}  // namespace

NoiseField compute_noise_field(std::span<const EnrichedTrip> trips, const Grid& grid, const SpatialIndex& index,
                               const FrequencyParams& fp, TimeWindow window, const EngineOptions& options,
                               EngineReport* report) {
  const RunContext ctx = prepare(trips, grid, fp, window, options.sound, options.deterministic);
  const std::int64_t n_minutes = ctx.minutes.last - ctx.minutes.first + 1;
  NoiseField field(fp.frequency_hz, grid.spec().hash(), window);
  if (n_minutes <= 0 || ctx.trips.empty()) {
    return field;
  }

  // Minutes are independent; split them into chunks handled by a small pool.
  // Within a minute, contributions are summed in trip order, so the result
  // does not depend on the thread count.
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::int64_t chunk_len = std::max<std::int64_t>(1, std::min<std::int64_t>(60, n_minutes / (4 * threads) + 1));
  const std::size_t n_chunks = static_cast<std::size_t>((n_minutes + chunk_len - 1) / chunk_len);
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));

  std::vector<std::vector<FieldEntry>> chunk_out(n_chunks);
  std::vector<EngineReport> thread_reports(threads);
  std::atomic<std::size_t> next{0};

  auto worker = [&](unsigned w) {
    MinuteAccumulator acc(grid.size());
    EngineReport& rep = thread_reports[w];
    for (std::size_t c = next++; c < n_chunks; c = next++) {
      const std::int64_t m0 = ctx.minutes.first + static_cast<std::int64_t>(c) * chunk_len;
      const std::int64_t m1 = std::min(ctx.minutes.last, m0 + chunk_len - 1);
      auto& out = chunk_out[c];
      for (std::int64_t m = m0; m <= m1; ++m) {
        const Instant t{m * kSamplingPeriodS};
        const auto& ambient = ctx.ambient_for(t);
        for (std::size_t ti = 0; ti < ctx.trips.size(); ++ti) {
          auto src = locate_source(ctx, ti, t, rep);
          if (!src) {
            continue;
          }
          rep.visit_bound += static_cast<double>(SpatialIndex::visit_bound(src->radius, grid.spec().cell_size));
          rep.centroid_visits += index.for_each_within(src->position, src->radius, [&](std::size_t idx, double d) {
            acc.add(idx, received_intensity(*src, d, ctx.alpha[idx], ambient[idx]));
            ++rep.contributions;
          });
        }
        acc.flush(static_cast<std::uint32_t>(m), grid.cells(), out);
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back(worker, w);
    }
  }

  std::size_t total = 0;
  for (const auto& c : chunk_out) total += c.size();
  std::vector<FieldEntry> entries;
  entries.reserve(total);
  for (auto& c : chunk_out) {
    entries.insert(entries.end(), c.begin(), c.end());
    std::vector<FieldEntry>().swap(c);
  }
  field.assign_intensities(std::move(entries));

  if (report) {
    for (const auto& r : thread_reports) merge_report(*report, r);
    if (report->outside_grid) {
      report->warnings.push_back(std::to_string(report->outside_grid) + " positions fell outside the grid");
    }
    if (report->missing_depth) {
      report->warnings.push_back(std::to_string(report->missing_depth) +
                                 " positions fell in cells without depth and were skipped");
    }
  }
  return field;
}

NoiseField brute_force_field(std::span<const EnrichedTrip> trips, const Grid& grid, const FrequencyParams& fp,
                             TimeWindow window, const SoundContext& sound) {
  const RunContext ctx = prepare(trips, grid, fp, window, sound, false);
  const std::int64_t n_minutes = std::max<std::int64_t>(0, ctx.minutes.last - ctx.minutes.first + 1);
  const double evaluations =
      static_cast<double>(grid.size()) * static_cast<double>(n_minutes) * static_cast<double>(ctx.trips.size());
  if (evaluations > kBruteForceLimit) {
    throw EngineError("brute-force evaluation refused: " + std::to_string(evaluations) + " pairs exceed the limit");
  }
  NoiseField field(fp.frequency_hz, grid.spec().hash(), window);
  std::vector<FieldEntry> entries;
  MinuteAccumulator acc(grid.size());
  EngineReport rep;
  const auto cells = grid.cells();
  for (std::int64_t m = ctx.minutes.first; m <= ctx.minutes.last; ++m) {
    const Instant t{m * kSamplingPeriodS};
    const auto& ambient = ctx.ambient_for(t);
    for (std::size_t ti = 0; ti < ctx.trips.size(); ++ti) {
      auto src = locate_source(ctx, ti, t, rep);
      if (!src) {
        continue;
      }
      for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        const double d = distance(cells[idx].centroid, src->position);
        if (d < src->radius) {
          acc.add(idx, received_intensity(*src, d, ctx.alpha[idx], ambient[idx]));
        }
      }
    }
    acc.flush(static_cast<std::uint32_t>(m), cells, entries);
  }
  field.assign_intensities(std::move(entries));
  return field;
}

double max_abs_difference_db(const NoiseField& a, const NoiseField& b) {
  if (!a.finalized() || !b.finalized()) {
    throw EngineError("compare finalized fields");
  }
  double worst = 0.0;
  auto ea = a.entries(), eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && entry_less(ea[i], eb[j]))) {
      return std::numeric_limits<double>::infinity();
    }
    if (i == ea.size() || entry_less(eb[j], ea[i])) {
      return std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, std::abs(ea[i].level - eb[j].level));
    ++i;
    ++j;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr char kMagic[6] = {'H', 'Y', 'D', 'N', 'F', '1'};
constexpr std::uint16_t kFormatVersion = 1;

template <class T>
void put_le(std::ostream& out, T value) {
  using U = std::make_unsigned_t<std::conditional_t<std::is_floating_point_v<T>,
                                                    std::conditional_t<sizeof(T) == 8, std::int64_t, std::int32_t>, T>>;
  U bits;
  std::memcpy(&bits, &value, sizeof bits);
  unsigned char buf[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof buf);
}

template <class T>
T get_le(std::istream& in) {
  using U = std::make_unsigned_t<std::conditional_t<std::is_floating_point_v<T>,
                                                    std::conditional_t<sizeof(T) == 8, std::int64_t, std::int32_t>, T>>;
  unsigned char buf[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof buf)) {
    throw EngineError("field file is truncated");
  }
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bits |= static_cast<U>(buf[i]) << (8 * i);
  }
  T value;
  std::memcpy(&value, &bits, sizeof value);
  return value;
}

}  // namespace

void store_field(const NoiseField& field, std::ostream& out) {
  if (!field.finalized()) {
    throw EngineError("only finalized fields can be stored");
  }
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint16_t>(out, kFormatVersion);
  put_le<std::int32_t>(out, field.frequency_hz());
  put_le<std::uint64_t>(out, field.grid_hash());
  put_le<std::int64_t>(out, field.window().begin.epoch_seconds);
  put_le<std::int64_t>(out, field.window().end.epoch_seconds);
  put_le<std::uint64_t>(out, field.size());
  for (const auto& e : field.entries()) put_le<std::uint32_t>(out, e.cell_id);
  for (const auto& e : field.entries()) put_le<std::uint32_t>(out, e.epoch_minute);
  for (const auto& e : field.entries()) put_le<double>(out, e.level);
  if (!out) {
    throw EngineError("failed to write field");
  }
}

void store_field(const NoiseField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw EngineError("cannot open " + path.string() + " for writing");
  }
  store_field(field, out);
}

NoiseField load_field(std::istream& in, std::optional<std::uint64_t> expected_grid_hash) {
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw EngineError("not a noise field file (bad magic)");
  }
  if (get_le<std::uint16_t>(in) != kFormatVersion) {
    throw EngineError("unsupported noise field format version");
  }
  const auto freq = get_le<std::int32_t>(in);
  const auto grid_hash = get_le<std::uint64_t>(in);
  const TimeWindow window{{get_le<std::int64_t>(in)}, {get_le<std::int64_t>(in)}};
  const auto count = get_le<std::uint64_t>(in);
  if (expected_grid_hash && *expected_grid_hash != grid_hash) {
    throw EngineError("noise field was computed on a different grid");
  }
  if (count > (std::uint64_t{1} << 40)) {
    throw EngineError("implausible entry count in field file");
  }
  std::vector<FieldEntry> entries(count);
  for (auto& e : entries) e.cell_id = get_le<std::uint32_t>(in);
  for (auto& e : entries) e.epoch_minute = get_le<std::uint32_t>(in);
  for (auto& e : entries) e.level = get_le<double>(in);
  return NoiseField::from_levels(freq, grid_hash, window, std::move(entries));
}

NoiseField load_field(const std::filesystem::path& path, std::optional<std::uint64_t> expected_grid_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw EngineError("cannot open " + path.string());
  }
  return load_field(in, expected_grid_hash);
}

void export_field_csv(const NoiseField& field, std::ostream& out) {
  if (!field.finalized()) {
    throw EngineError("only finalized fields can be exported");
  }
  out << "cell_id,timestamp_iso8601,rl_db\n";
  char buf[64];
  for (const auto& e : field.entries()) {
    std::snprintf(buf, sizeof buf, "%.6f", e.level);
    out << e.cell_id << ',' << format_iso8601({static_cast<std::int64_t>(e.epoch_minute) * kSamplingPeriodS}) << ','
        << buf << '\n';
  }
}

}  // namespace hydronoise
