// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>

#include "hydronoise/hash.hpp"

namespace hydronoise::cli {

namespace pt = boost::property_tree;

const char* const kConfigReference = R"(Configuration file (INI):
  [paths]        ais, registry, ports, bathymetry (.asc raster or lon,lat,depth_m CSV),
                 stations, output (directory, created on demand)
  [grid]         origin_x, origin_y (projected metres) or origin_lon, origin_lat;
                 n_cols, n_rows, cell_m (1000), epsg (32633)
  [thresholds]   fish_min_kn (1.0), fish_max_kn (6.0), gap_s (1800), idw_power (2)
  [sampling]     period_s (60)
  [run]          frequencies (63,125,400,4000)
  [frequency.F]  anchor_sl0_db, fishing_inc_db, trans_mult, alpha_db_per_m
                 (override defaults; all four are required for a new F)
Relative paths are resolved against the directory of the configuration file.)";

namespace {

template <class T>
T get(const pt::ptree& section, const std::string& section_name, const std::string& key, T fallback) {
  auto v = section.get_optional<std::string>(key);
  if (!v) {
    return fallback;
  }
  std::istringstream in(*v);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) {
    throw UsageError("config [" + section_name + "] " + key + ": cannot parse '" + *v + "'");
  }
  return out;
}

const pt::ptree& section_or_empty(const pt::ptree& root, const std::string& name) {
  static const pt::ptree empty;
  auto it = root.find(name);
  return it == root.not_found() ? empty : it->second;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
    } catch (const std::exception&) {
      throw UsageError("config [run] frequencies: bad value '" + item + "'");
    }
  }
  if (out.empty()) {
    throw UsageError("config [run] frequencies is empty");
  }
  return out;
}

}  // namespace

void require_exists(const std::filesystem::path& p, const std::string& what) {
  if (p.empty()) {
    throw UsageError(what + " path is not configured");
  }
  if (!std::filesystem::exists(p)) {
    throw UsageError(what + " not found: " + p.string());
  }
}

Config load_config(const std::filesystem::path& file) {
  require_exists(file, "config file");
  std::ifstream in(file, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  pt::ptree root;
  try {
    std::istringstream src(text);
    pt::read_ini(src, root);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError("config " + file.string() + ": " + e.message() + " at line " + std::to_string(e.line()));
  }

  Config c;
  c.file = file;
  c.hash = fnv1a64(text);
  const auto base = file.parent_path();
  auto resolve = [&](const pt::ptree& s, const char* key) -> std::filesystem::path {
    auto v = s.get_optional<std::string>(key);
    if (!v || v->empty()) return {};
    std::filesystem::path p(*v);
    return p.is_absolute() ? p : base / p;
  };

  const auto& paths = section_or_empty(root, "paths");
  c.paths = {resolve(paths, "ais"),        resolve(paths, "registry"), resolve(paths, "ports"),
             resolve(paths, "bathymetry"), resolve(paths, "stations"), resolve(paths, "output")};
  if (c.paths.output.empty()) {
    c.paths.output = base / "out";
  }

  const auto& g = section_or_empty(root, "grid");
  c.grid.epsg = get(g, "grid", "epsg", 32633);
  c.grid.n_cols = get(g, "grid", "n_cols", 0);
  c.grid.n_rows = get(g, "grid", "n_rows", 0);
  c.grid.cell_size = get(g, "grid", "cell_m", 1000.0);
  if (g.count("origin_x") || g.count("origin_y")) {
    c.grid.origin = {get(g, "grid", "origin_x", 0.0), get(g, "grid", "origin_y", 0.0)};
  } else if (g.count("origin_lon") && g.count("origin_lat")) {
    const Projection proj = [&] {
      try {
        return Projection::from_epsg(c.grid.epsg);
      } catch (const std::exception& e) {
        throw UsageError(std::string("config [grid] epsg: ") + e.what());
      }
    }();
    c.grid.origin = proj.forward({get(g, "grid", "origin_lon", 0.0), get(g, "grid", "origin_lat", 0.0)});
  } else {
    throw UsageError("config [grid] needs origin_x/origin_y or origin_lon/origin_lat");
  }
  try {
    c.grid.validate();
  } catch (const std::exception& e) {
    throw UsageError(std::string("config [grid]: ") + e.what());
  }

  const auto& th = section_or_empty(root, "thresholds");
  c.activity.fish_min_kn = get(th, "thresholds", "fish_min_kn", c.activity.fish_min_kn);
  c.activity.fish_max_kn = get(th, "thresholds", "fish_max_kn", c.activity.fish_max_kn);
  c.gap_s = get(th, "thresholds", "gap_s", c.gap_s);
  c.idw_power = get(th, "thresholds", "idw_power", c.idw_power);
  if (c.activity.fish_min_kn > c.activity.fish_max_kn || c.gap_s <= 0 || !(c.idw_power > 0.0)) {
    throw UsageError("config [thresholds]: need fish_min_kn <= fish_max_kn, gap_s > 0, idw_power > 0");
  }

  c.sampling_period_s = get(section_or_empty(root, "sampling"), "sampling", "period_s", c.sampling_period_s);
  if (c.sampling_period_s != 60) {
    throw UsageError("config [sampling] period_s: the engine works on a 60 s lattice");
  }

  if (auto f = section_or_empty(root, "run").get_optional<std::string>("frequencies")) {
    c.frequencies = parse_int_list(*f);
  }

  for (const auto& [name, section] : root) {
    if (name.rfind("frequency.", 0) != 0) continue;
    int f = 0;
    try {
      f = std::stoi(name.substr(10));
    } catch (const std::exception&) {
      throw UsageError("config section [" + name + "]: bad frequency");
    }
    FrequencyParams p;
    if (c.table.contains(f)) {
      p = c.table.at(f);
    } else {
      for (const char* key : {"anchor_sl0_db", "fishing_inc_db", "trans_mult", "alpha_db_per_m"}) {
        if (!section.count(key)) {
          throw UsageError("config [" + name + "] must set " + key + " for a new frequency");
        }
      }
      p.frequency_hz = f;
    }
    p.anchor_sl0_db = get(section, name, "anchor_sl0_db", p.anchor_sl0_db);
    p.fishing_inc_db = get(section, name, "fishing_inc_db", p.fishing_inc_db);
    p.trans_mult = get(section, name, "trans_mult", p.trans_mult);
    p.alpha_db_per_m = get(section, name, "alpha_db_per_m", p.alpha_db_per_m);
    try {
      c.table.set(p);
    } catch (const std::exception& e) {
      throw UsageError("config [" + name + "]: " + e.what());
    }
  }
  for (int f : c.frequencies) {
    if (!c.table.contains(f)) {
      throw UsageError("config [run] frequency " + std::to_string(f) + " has no parameters");
    }
  }
  return c;
}

}  // namespace hydronoise::cli
