// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

// Fresh copy of the bundled fixture in a scratch directory.
class Workspace {
 public:
  Workspace() {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("hydronoise_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
    for (const auto& e : fs::directory_iterator(HYDRONOISE_FIXTURE_DIR)) {
      if (e.is_regular_file()) fs::copy_file(e.path(), dir_ / e.path().filename());
    }
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  fs::path dir() const { return dir_; }
  fs::path config() const { return dir_ / "hydronoise.ini"; }
  fs::path out(const std::string& name) const { return dir_ / "out" / name; }

  Result run(std::vector<std::string> args) const {
    args.insert(args.begin(), {"hydronoise", "-c", config().string()});
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = hydronoise::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

 private:
  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  Workspace ws;
  fs::remove(ws.dir() / "registry.csv");
  auto r = ws.run({"ingest"});
  CHECK(r.code == 2);
  CHECK(r.err.find("registry.csv") != std::string::npos);

  CHECK(ws.run({"bogus"}).code == 2);
  CHECK(ws.run({"compute", "--begin", "2020-06-01T00:00:00"}).code == 2);

  const char* argv[] = {"hydronoise", "-c", "/nonexistent/h.ini", "ingest"};
  std::ostringstream out, err;
  CHECK(hydronoise::cli::run(4, argv, out, err) == 2);
  CHECK(err.str().find("/nonexistent/h.ini") != std::string::npos);

  const char* help[] = {"hydronoise", "--help"};
  std::ostringstream hout, herr;
  CHECK(hydronoise::cli::run(2, help, hout, herr) == 0);
  CHECK(hout.str().find("[frequency.F]") != std::string::npos);
}

TEST_CASE("pipeline on the fixture") {
  Workspace ws;

  auto ingest = ws.run({"ingest"});
  REQUIRE_MESSAGE(ingest.code == 0, ingest.err);
  CHECK(ingest.out.rfind("vessels,ais,trips\n3,", 0) == 0);
  CHECK(fs::exists(ws.out("trips.json")));

  auto ambient = ws.run({"ambient", "--month", "2020-06"});
  REQUIRE_MESSAGE(ambient.code == 0, ambient.err);
  CHECK(fs::exists(ws.out("ambient_2020-06.csv")));
  CHECK(fs::exists(ws.out("ambient_2020-06.geojson")));

  SUBCASE("compute with the oracle") {
    auto c = ws.run({"compute", "--begin", "2020-06-01T03:00:00", "--end", "2020-06-01T09:00:00", "-f", "63",
                     "--oracle", "--csv"});
    REQUIRE_MESSAGE(c.code == 0, c.err);
    CHECK(c.out.find("max_delta_db <= 1e-9") != std::string::npos);
    CHECK(fs::exists(ws.out("field_63.hnf")));

    auto a = ws.run({"analyze", "--field", ws.out("field_63.hnf").string(), "--scheme", "peak"});
    REQUIRE_MESSAGE(a.code == 0, a.err);
    CHECK(a.out.find("noise_band,persistence_band,fraction") != std::string::npos);

    auto f = ws.run({"frames", "--field", ws.out("field_63.hnf").string(), "--begin", "2020-06-01T05:00:00", "--end",
                     "2020-06-01T05:10:00", "--step", "60"});
    REQUIRE_MESSAGE(f.code == 0, f.err);
    CHECK(count_lines(f.out) == 12);
    int frames = 0;
    for (const auto& e : fs::directory_iterator(ws.out("frames_63"))) frames += e.path().extension() == ".geojson";
    CHECK(frames == 11);
    const auto first = nlohmann::json::parse(slurp(ws.out("frames_63") / "frame_00000.geojson"));
    CHECK(first["metadata"]["timestamp"] == "2020-06-01T05:00:00Z");

    const auto manifest = nlohmann::json::parse(slurp(ws.out("manifest.json")));
    CHECK(manifest.contains("config_hash"));
    CHECK(manifest["outputs"].contains("field_63.hnf"));
  }

  SUBCASE("analyze on an empty field") {
    auto c = ws.run({"compute", "--begin", "2020-06-01T00:00:00", "--end", "2020-06-01T01:00:00", "-f", "125"});
    REQUIRE_MESSAGE(c.code == 0, c.err);
    auto a = ws.run({"analyze", "--field", ws.out("field_125.hnf").string()});
    REQUIRE_MESSAGE(a.code == 0, a.err);
    CHECK(a.out.find("<4,<25%,1") != std::string::npos);
    CHECK(count_lines(a.out) == 2);
  }

  SUBCASE("deterministic runs are idempotent") {
    const std::vector<std::string> args{"--deterministic", "-j", "2", "compute", "--begin", "2020-06-02T04:00:00",
                                        "--end", "2020-06-02T07:00:00", "-f", "400"};
    REQUIRE(ws.run(args).code == 0);
    const auto one = slurp(ws.out("field_400.hnf"));
    REQUIRE(ws.run(args).code == 0);
    CHECK(one == slurp(ws.out("field_400.hnf")));
    CHECK(one.size() > 64);
  }

  SUBCASE("field from another grid is refused") {
    REQUIRE(ws.run({"compute", "--begin", "2020-06-01T04:00:00", "--end", "2020-06-01T04:10:00", "-f", "63"}).code == 0);
    std::string ini = slurp(ws.config());
    ini.replace(ini.find("n_cols = 40"), 11, "n_cols = 41");
    std::ofstream(ws.config(), std::ios::trunc) << ini;
    auto a = ws.run({"analyze", "--field", ws.out("field_63.hnf").string()});
    CHECK(a.code == 2);
  }
}
