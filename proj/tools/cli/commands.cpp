// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "config.hpp"
#include "hydronoise/analytics.hpp"
#include "hydronoise/engine.hpp"
#include "hydronoise/enrich.hpp"
#include "hydronoise/grid.hpp"
#include "hydronoise/hash.hpp"
#include "hydronoise/ingest.hpp"
#include "hydronoise/io.hpp"

namespace hydronoise::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::string config_path;
  unsigned threads = 0;
  bool deterministic = false;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

std::ifstream open_in(const fs::path& p, const std::string& what) {
  require_exists(p, what);
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + what + ": " + p.string());
  }
  return in;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) {
    fs::create_directories(p.parent_path());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + p.string());
  }
  return out;
}

Instant parse_instant_arg(const std::string& text, const char* flag) {
  auto t = parse_iso8601(text);
  if (!t) {
    throw UsageError(std::string(flag) + ": expected YYYY-MM-DDTHH:MM:SS, got '" + text + "'");
  }
  return *t;
}

std::chrono::sys_days parse_date_arg(const std::string& text, const char* flag) {
  auto d = parse_date(text);
  if (!d) {
    throw UsageError(std::string(flag) + ": expected YYYY-MM-DD, got '" + text + "'");
  }
  return *d;
}

TimeWindow window_arg(const std::string& begin, const std::string& end) {
  TimeWindow w{parse_instant_arg(begin, "--begin"), parse_instant_arg(end, "--end")};
  if (w.end < w.begin) {
    throw UsageError("--end precedes --begin");
  }
  return w;
}

std::set<YearMonth> months_of(TimeWindow w) {
  std::set<YearMonth> months;
  for (auto d = day_of(w.begin); d <= day_of(w.end); d += std::chrono::days{1}) {
    months.insert(year_month_of(start_of(d)));
  }
  return months;
}

void print_issues(const std::vector<ParseIssue>& issues, const std::string& file, std::ostream& err) {
  const std::size_t shown = std::min<std::size_t>(issues.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    err << "warning: " << file << ":" << issues[i].line << ": " << issues[i].message << '\n';
  }
  if (issues.size() > shown) {
    err << "warning: " << file << ": " << issues.size() - shown << " more malformed rows skipped\n";
  }
}

Metadata base_metadata(const Config& cfg, const std::string& command) {
  return {{"command", command},
          {"config_hash", hex64(cfg.hash)},
          {"grid_hash", hex64(cfg.grid.hash())},
          {"epsg", std::to_string(cfg.grid.epsg)}};
}

// manifest.json in the output directory: file name -> metadata.
void record_output(const Config& cfg, const fs::path& file, const Metadata& meta) {
  const fs::path manifest = cfg.paths.output / "manifest.json";
  json doc = json::object();
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) doc = json::object();
  }
  doc["config_hash"] = hex64(cfg.hash);
  doc["grid_hash"] = hex64(cfg.grid.hash());
  doc["outputs"][fs::relative(file, cfg.paths.output).generic_string()] = meta;
  auto out = open_out(manifest);
  out << doc.dump(2) << '\n';
}

std::vector<PortArea> load_ports(const Config& cfg, const Projection& proj) {
  if (cfg.paths.ports.empty()) {
    return {};
  }
  auto in = open_in(cfg.paths.ports, "ports file");
  return parse_ports(in, proj);
}

Registry load_registry(const Config& cfg, std::ostream& err) {
  auto in = open_in(cfg.paths.registry, "vessel registry");
  auto parsed = parse_registry(in);
  print_issues(parsed.issues, cfg.paths.registry.string(), err);
  Registry reg;
  for (auto& v : parsed.rows) reg[v.mmsi] = std::move(v);
  return reg;
}

Grid load_grid(const Config& cfg, const Projection& proj) {
  auto in = open_in(cfg.paths.bathymetry, "bathymetry");
  const auto ext = cfg.paths.bathymetry.extension();
  if (ext == ".asc") {
    return build_grid(cfg.grid, RasterBathymetry::from_ascii_grid(in));
  }
  return build_grid(cfg.grid, PointCloudBathymetry::from_csv(in, proj));
}

std::vector<HydrophoneStation> load_stations(const Config& cfg, const Projection& proj) {
  auto in = open_in(cfg.paths.stations, "stations file");
  return parse_stations(in, proj);
}

std::vector<int> selected_frequencies(const Config& cfg, const std::vector<int>& requested) {
  if (requested.empty()) return cfg.frequencies;
  for (int f : requested) {
    if (std::find(cfg.frequencies.begin(), cfg.frequencies.end(), f) == cfg.frequencies.end()) {
      throw UsageError("--frequency " + std::to_string(f) + " is not configured");
    }
  }
  return requested;
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Globals& g, Streams io) {
  const Config cfg = load_config(g.config_path);
  require_exists(cfg.paths.ais, "AIS file");
  require_exists(cfg.paths.registry, "vessel registry");
  if (!cfg.paths.ports.empty()) require_exists(cfg.paths.ports, "ports file");
  const auto proj = Projection::from_epsg(cfg.grid.epsg);

  const Registry registry = load_registry(cfg, io.err);
  const auto ports = load_ports(cfg, proj);
  auto ais_in = open_in(cfg.paths.ais, "AIS file");
  auto ais = parse_ais(ais_in);
  print_issues(ais.issues, cfg.paths.ais.string(), io.err);
  const std::size_t ais_rows = ais.rows.size();

  std::size_t duplicates = 0;
  const auto by_vessel = group_by_vessel(std::move(ais.rows), &duplicates);
  if (duplicates) {
    io.err << "warning: " << duplicates << " duplicate AIS instants dropped\n";
  }
  std::vector<std::string> warnings;
  std::vector<EnrichedTrip> trips;
  for (const auto& [mmsi, records] : by_vessel) {
    for (auto& trip : split_trips(records, ports, cfg.gap_s, proj).trips) {
      auto enriched = attach_aspects(std::move(trip), registry, ports, cfg.activity, cfg.table, &warnings);
      if (!enriched) continue;
      auto synced = synchronize_trip(enriched->trip, cfg.sampling_period_s, Instant{0});
      if (!synced) {
        warnings.push_back("trip " + std::to_string(enriched->trip.trip_id) + " of vessel " +
                           std::to_string(static_cast<std::uint32_t>(mmsi)) + " spans no sampling instant");
        continue;
      }
      enriched->trip = std::move(*synced);
      trips.push_back(std::move(*enriched));
    }
  }
  for (const auto& w : warnings) io.err << "warning: " << w << '\n';

  const fs::path out_file = cfg.paths.output / "trips.json";
  Metadata meta = base_metadata(cfg, "ingest");
  meta["vessels"] = std::to_string(by_vessel.size());
  meta["ais"] = std::to_string(ais_rows);
  meta["trips"] = std::to_string(trips.size());
  {
    auto out = open_out(out_file);
    write_trips_json(trips, meta, out);
  }
  record_output(cfg, out_file, meta);
  io.out << "vessels,ais,trips\n" << by_vessel.size() << ',' << ais_rows << ',' << trips.size() << '\n';
  return 0;
}

int cmd_ambient(const Globals& g, Streams io, const std::string& month_text) {
  const Config cfg = load_config(g.config_path);
  const auto month = parse_year_month(month_text);
  if (!month) {
    throw UsageError("--month: expected YYYY-MM, got '" + month_text + "'");
  }
  require_exists(cfg.paths.bathymetry, "bathymetry");
  require_exists(cfg.paths.stations, "stations file");
  const auto proj = Projection::from_epsg(cfg.grid.epsg);
  Grid grid = load_grid(cfg, proj);
  const auto stations = load_stations(cfg, proj);

  const std::string tag = format_year_month(*month);
  std::map<int, const std::vector<double>*> surfaces;
  for (int f : cfg.frequencies) {
    surfaces[f] = &idw_ambient(stations, grid, f, *month, cfg.idw_power);
  }

  Metadata meta = base_metadata(cfg, "ambient");
  meta["month"] = tag;
  const fs::path csv_path = cfg.paths.output / ("ambient_" + tag + ".csv");
  const fs::path geo_path = cfg.paths.output / ("ambient_" + tag + ".geojson");
  {
    auto out = open_out(csv_path);
    out << "cell_id,frequency_hz,month,l90_db\n";
    char buf[32];
    for (const auto& [f, surface] : surfaces) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f", (*surface)[i]);
        out << grid.cells()[i].id << ',' << f << ',' << tag << ',' << buf << '\n';
      }
    }
  }
  {
    std::vector<CellFeature> features(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      features[i].id = grid.cells()[i].id;
      features[i].properties.emplace_back("depth_m", grid.cells()[i].depth);
      for (const auto& [f, surface] : surfaces) {
        features[i].properties.emplace_back("l90_" + std::to_string(f), (*surface)[i]);
      }
    }
    auto out = open_out(geo_path);
    write_cells_geojson(features, grid, proj, meta, out);
  }
  record_output(cfg, csv_path, meta);
  record_output(cfg, geo_path, meta);
  io.out << "cells,frequencies,month\n" << grid.size() << ',' << surfaces.size() << ',' << tag << '\n';
  return 0;
}

struct ComputeArgs {
  std::string begin, end;
  std::vector<int> frequencies;
  std::vector<std::uint32_t> mmsi;
  std::vector<std::string> gear;
  std::optional<double> hp_min, hp_max, loa_min, loa_max;
  std::string activity;
  bool oracle = false;
  std::string out;
  bool csv = false;
};

Activity parse_activity(const std::string& text) {
  static const std::map<std::string, Activity> names = {{"in_port", Activity::in_port},
                                                        {"entering", Activity::entering},
                                                        {"exiting", Activity::exiting},
                                                        {"fishing", Activity::fishing},
                                                        {"navigation", Activity::navigation}};
  if (auto it = names.find(text); it != names.end()) return it->second;
  if (text.size() == 1 && is_valid_activity(text[0] - '0')) return static_cast<Activity>(text[0] - '0');
  throw UsageError("--activity: unknown activity '" + text + "'");
}

int cmd_compute(const Globals& g, Streams io, const ComputeArgs& a) {
  const Config cfg = load_config(g.config_path);
  const TimeWindow window = window_arg(a.begin, a.end);
  const fs::path trips_path = cfg.paths.output / "trips.json";
  require_exists(trips_path, "trips archive (run ingest first)");
  require_exists(cfg.paths.bathymetry, "bathymetry");
  require_exists(cfg.paths.stations, "stations file");
  const auto freqs = selected_frequencies(cfg, a.frequencies);

  TripFilter filter;
  for (auto m : a.mmsi) filter.mmsi.insert(static_cast<Mmsi>(m));
  filter.gear.insert(a.gear.begin(), a.gear.end());
  if (a.hp_min || a.hp_max) filter.engine_hp = std::pair(a.hp_min.value_or(0.0), a.hp_max.value_or(1e300));
  if (a.loa_min || a.loa_max) filter.loa_m = std::pair(a.loa_min.value_or(0.0), a.loa_max.value_or(1e300));
  if (!a.activity.empty()) filter.activity = parse_activity(a.activity);

  const auto proj = Projection::from_epsg(cfg.grid.epsg);
  Grid grid = load_grid(cfg, proj);
  const auto stations = load_stations(cfg, proj);

  std::vector<EnrichedTrip> trips;
  {
    auto in = open_in(trips_path, "trips archive");
    Metadata archived;
    trips = read_trips_json(in, &archived);
    if (archived.count("grid_hash") && archived["grid_hash"] != hex64(cfg.grid.hash())) {
      io.err << "warning: trips archive was produced with a different grid configuration\n";
    }
  }
  if (!filter.empty()) {
    Registry registry;
    if (filter.engine_hp || filter.loa_m || !filter.gear.empty()) {
      registry = load_registry(cfg, io.err);
    }
    trips = filter_trips(trips, registry, filter);
  }

  EngineOptions options;
  options.sound = cfg.sound;
  options.threads = g.threads;
  options.deterministic = g.deterministic;
  const auto index = make_centroid_index(grid);

  io.out << "frequency_hz,trips,entries,instants,outside_grid,missing_depth,max_radius_m,file\n";
  int status = 0;
  for (int f : freqs) {
    for (const auto& ym : months_of(window)) {
      idw_ambient(stations, grid, f, ym, cfg.idw_power);
    }
    const auto& fp = cfg.table.at(f);
    EngineReport report;
    NoiseField field = compute_noise_field(trips, grid, index, fp, window, options, &report);
    field.finalize();
    for (const auto& w : report.warnings) io.err << "warning: " << w << '\n';

    fs::path out_file = a.out.empty() ? cfg.paths.output / ("field_" + std::to_string(f) + ".hnf") : fs::path(a.out);
    if (!a.out.empty() && freqs.size() > 1) {
      out_file.replace_filename(out_file.stem().string() + "_" + std::to_string(f) + out_file.extension().string());
    }
    {
      auto out = open_out(out_file);
      store_field(field, out);
    }
    Metadata meta = base_metadata(cfg, "compute");
    meta["frequency_hz"] = std::to_string(f);
    meta["window_begin"] = format_iso8601(window.begin);
    meta["window_end"] = format_iso8601(window.end);
    meta["trips"] = std::to_string(trips.size());
    record_output(cfg, out_file, meta);
    if (a.csv) {
      fs::path csv_file = out_file;
      csv_file.replace_extension(".csv");
      auto out = open_out(csv_file);
      export_field_csv(field, out);
      record_output(cfg, csv_file, meta);
    }
    char radius[32];
    std::snprintf(radius, sizeof radius, "%.1f", report.max_radius_m);
    io.out << f << ',' << trips.size() << ',' << field.size() << ',' << report.instants_evaluated << ','
           << report.outside_grid << ',' << report.missing_depth << ',' << radius << ',' << out_file.string() << '\n';

    if (a.oracle) {
      NoiseField reference = brute_force_field(trips, grid, fp, window, cfg.sound);
      reference.finalize();
      const double delta = max_abs_difference_db(field, reference);
      if (delta <= 1e-9) {
        io.out << "max_delta_db <= 1e-9\n";
      } else {
        io.out << "max_delta_db = " << delta << '\n';
        status = 1;
      }
    }
  }
  return status;
}

struct AnalyzeArgs {
  std::string field;
  std::string from, to;
  std::string days;
  std::string scheme = "average";
  std::string prefix;
};

int cmd_analyze(const Globals& g, Streams io, const AnalyzeArgs& a) {
  const Config cfg = load_config(g.config_path);
  require_exists(a.field, "field file");
  require_exists(cfg.paths.bathymetry, "bathymetry");
  BandScheme scheme;
  if (a.scheme == "average") {
    scheme = BandScheme::average;
  } else if (a.scheme == "peak") {
    scheme = BandScheme::peak;
  } else {
    throw UsageError("--scheme must be 'average' or 'peak'");
  }
  std::optional<WeekdayMask> days;
  if (!a.days.empty()) {
    try {
      days = parse_weekdays(a.days);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--days: ") + e.what());
    }
  }
  const auto proj = Projection::from_epsg(cfg.grid.epsg);
  const Grid grid = load_grid(cfg, proj);
  NoiseField field;
  try {
    field = load_field(fs::path(a.field), grid.spec().hash());
  } catch (const EngineError& e) {
    throw UsageError(a.field + ": " + e.what());
  }
  DatePeriod period{a.from.empty() ? day_of(field.window().begin) : parse_date_arg(a.from, "--from"),
                    a.to.empty() ? day_of(field.window().end) : parse_date_arg(a.to, "--to")};

  std::vector<CellId> ids;
  for (const auto& c : grid.cells()) ids.push_back(c.id);
  std::vector<CellStats> stats;
  try {
    stats = cell_stats(field, ids, period, days);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<BivariateClass> classes;
  for (const auto& s : stats) classes.push_back(bivariate_classify(s, scheme));

  Metadata meta = base_metadata(cfg, "analyze");
  meta["field"] = fs::path(a.field).filename().string();
  meta["frequency_hz"] = std::to_string(field.frequency_hz());
  meta["period"] = format_date(period.first) + "/" + format_date(period.last);
  meta["scheme"] = a.scheme;
  if (!a.days.empty()) meta["days"] = a.days;

  const std::string prefix = a.prefix.empty() ? "stats_" + std::to_string(field.frequency_hz()) + "_" + a.scheme : a.prefix;
  const fs::path csv_path = cfg.paths.output / (prefix + ".csv");
  const fs::path geo_path = cfg.paths.output / (prefix + ".geojson");
  {
    auto out = open_out(csv_path);
    export_stats_csv(stats, scheme, out);
  }
  {
    std::vector<CellFeature> features(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i) {
      const auto& s = stats[i];
      auto opt = [](const std::optional<double>& v) -> PropertyValue {
        return v ? PropertyValue{*v} : PropertyValue{std::monostate{}};
      };
      features[i].id = s.cell_id;
      features[i].properties = {
          {"avg_excess_db", opt(s.avg_excess_db)},
          {"active_days", std::int64_t{s.active_days}},
          {"total_days", std::int64_t{s.total_days}},
          {"persistence", s.persistence},
          {"mean_daily_peak_db", opt(s.mean_daily_peak_db)},
          {"noise_band", noise_band_label(scheme, classes[i].noise_band)},
          {"persistence_band", persistence_band_label(classes[i].persistence_band)},
      };
    }
    auto out = open_out(geo_path);
    write_cells_geojson(features, grid, proj, meta, out);
  }
  record_output(cfg, csv_path, meta);
  record_output(cfg, geo_path, meta);

  io.out << "noise_band,persistence_band,fraction\n";
  for (const auto& [c, frac] : area_summary(stats, classes)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", frac);
    io.out << noise_band_label(scheme, c.noise_band) << ',' << persistence_band_label(c.persistence_band) << ','
           << buf << '\n';
  }
  return 0;
}

struct FramesArgs {
  std::string field;
  std::string begin, end;
  std::int64_t step_s = 60;
};

int cmd_frames(const Globals& g, Streams io, const FramesArgs& a) {
  const Config cfg = load_config(g.config_path);
  require_exists(a.field, "field file");
  require_exists(cfg.paths.bathymetry, "bathymetry");
  const TimeWindow window = window_arg(a.begin, a.end);
  if (a.step_s <= 0 || a.step_s % kSamplingPeriodS != 0) {
    throw UsageError("--step must be a positive multiple of 60 s");
  }
  if (window.begin.epoch_seconds % kSamplingPeriodS != 0) {
    throw UsageError("--begin must fall on a whole minute");
  }
  const auto proj = Projection::from_epsg(cfg.grid.epsg);
  const Grid grid = load_grid(cfg, proj);
  NoiseField field;
  try {
    field = load_field(fs::path(a.field), grid.spec().hash());
  } catch (const EngineError& e) {
    throw UsageError(a.field + ": " + e.what());
  }

  const fs::path dir = cfg.paths.output / ("frames_" + std::to_string(field.frequency_hz()));
  fs::create_directories(dir);
  const auto entries = field.entries();
  std::size_t n = 0;
  io.out << "frame,timestamp,cells,file\n";
  for (Instant t = window.begin; t <= window.end; t = t + a.step_s, ++n) {
    const auto minute = static_cast<std::uint32_t>(t.epoch_seconds / kSamplingPeriodS);
    auto lo = std::lower_bound(entries.begin(), entries.end(), minute,
                               [](const FieldEntry& e, std::uint32_t m) { return e.epoch_minute < m; });
    std::vector<CellFeature> features;
    for (auto it = lo; it != entries.end() && it->epoch_minute == minute; ++it) {
      if (!grid.sea_index(it->cell_id)) continue;
      features.push_back({it->cell_id, {{"rl_db", it->level}, {"timestamp", format_iso8601(t)}}});
    }
    Metadata meta = base_metadata(cfg, "frames");
    meta["timestamp"] = format_iso8601(t);
    meta["frequency_hz"] = std::to_string(field.frequency_hz());
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.geojson", n);
    const fs::path file = dir / name;
    {
      auto out = open_out(file);
      write_cells_geojson(features, grid, proj, meta, out);
    }
    record_output(cfg, file, meta);
    io.out << n << ',' << format_iso8601(t) << ',' << features.size() << ',' << file.string() << '\n';
  }
  io.err << n << " frames written to " << dir.string() << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hydronoise: underwater noise maps from AIS vessel tracks"};
  app.footer(kConfigReference);
  app.require_subcommand(1);
  Globals g;
  app.add_option("-c,--config", g.config_path, "configuration file")->required();
  app.add_option("-j,--threads", g.threads, "worker threads (0 = all cores)");
  app.add_flag("--deterministic", g.deterministic, "canonical trip order");

  auto* ingest = app.add_subcommand("ingest", "parse AIS + registry, split, enrich and resample trips");

  std::string month;
  auto* ambient = app.add_subcommand("ambient", "interpolate monthly ambient noise onto the grid");
  ambient->add_option("--month", month, "YYYY-MM")->required();

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "accumulate received noise over a time window");
  compute->add_option("--begin", ca.begin, "window start, YYYY-MM-DDTHH:MM:SS (UTC)")->required();
  compute->add_option("--end", ca.end, "window end (inclusive)")->required();
  compute->add_option("-f,--frequency", ca.frequencies, "frequency in Hz (repeatable; default all)");
  compute->add_option("--mmsi", ca.mmsi, "keep these vessels")->delimiter(',');
  compute->add_option("--gear", ca.gear, "keep these gear codes")->delimiter(',');
  compute->add_option("--hp-min", ca.hp_min, "minimum engine power");
  compute->add_option("--hp-max", ca.hp_max, "maximum engine power");
  compute->add_option("--loa-min", ca.loa_min, "minimum length overall (m)");
  compute->add_option("--loa-max", ca.loa_max, "maximum length overall (m)");
  compute->add_option("--activity", ca.activity, "keep trips with this activity at some instant");
  compute->add_flag("--oracle", ca.oracle, "also run the brute-force reference and report max |delta|");
  compute->add_option("-o,--out", ca.out, "field file (default <output>/field_<f>.hnf)");
  compute->add_flag("--csv", ca.csv, "also export the field as CSV");

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "per-cell statistics and bivariate classes");
  analyze->add_option("--field", aa.field, "field file")->required();
  analyze->add_option("--from", aa.from, "first day, YYYY-MM-DD (default: field start)");
  analyze->add_option("--to", aa.to, "last day, YYYY-MM-DD (default: field end)");
  analyze->add_option("--days", aa.days, "weekday filter, e.g. mon-thu or sat,sun");
  analyze->add_option("--scheme", aa.scheme, "average or peak")->check(CLI::IsMember({"average", "peak"}));
  analyze->add_option("--prefix", aa.prefix, "output file prefix");

  FramesArgs fa;
  auto* frames = app.add_subcommand("frames", "time-stamped GeoJSON frames of a field");
  frames->add_option("--field", fa.field, "field file")->required();
  frames->add_option("--begin", fa.begin, "first frame instant")->required();
  frames->add_option("--end", fa.end, "last frame instant (inclusive)")->required();
  frames->add_option("--step", fa.step_s, "seconds between frames (multiple of 60)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Streams io{out, err};
  try {
    if (*ingest) return cmd_ingest(g, io);
    if (*ambient) return cmd_ambient(g, io, month);
    if (*compute) return cmd_compute(g, io, ca);
    if (*analyze) return cmd_analyze(g, io, aa);
    if (*frames) return cmd_frames(g, io, fa);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hydronoise::cli
