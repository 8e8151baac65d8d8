// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hris/cli.hpp"
#include "hris/serialization.hpp"
#include "json.hpp"

using namespace hris;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hris_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string str() const { return path.string(); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_quiet(const std::vector<std::string>& args, std::string* err = nullptr) {
  std::ostringstream out_sink, err_sink;
  auto* old_out = std::cout.rdbuf(out_sink.rdbuf());
  auto* old_err = std::cerr.rdbuf(err_sink.rdbuf());
  const int rc = run_cli(args);
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  if (err) *err = err_sink.str();
  return rc;
}

}  // namespace

TEST_CASE("checkfit writes a passing report and a config echo") {
  TempDir dir;
  CHECK(run_quiet({"--out", dir.str(), "checkfit"}) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("fit_report.json")));
  CHECK(rep["pass"].get<bool>());
  const auto cfg = nlohmann::json::parse(slurp(dir.file("checkfit_config.json")));
  CHECK(cfg["command"] == "checkfit");
  CHECK(cfg["params"]["eps_disc"] == 10.2);
}

TEST_CASE("checkfit fails for the boundary permittivity") {
  TempDir dir;
  CHECK(run_quiet({"--out", dir.str(), "checkfit", "--eps-disc", "4.0"}) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("fit_report.json")));
  CHECK(!rep["pass"].get<bool>());
}

TEST_CASE("layout output is deterministic") {
  TempDir a, b;
  CHECK(run_quiet({"--out", a.str(), "layout", "--nx", "12", "--ny", "12"}) == 0);
  CHECK(run_quiet({"--out", b.str(), "layout", "--nx", "12", "--ny", "12"}) == 0);
  CHECK(slurp(a.file("layout.json")) == slurp(b.file("layout.json")));
  CHECK(slurp(a.file("layout_report.json")) == slurp(b.file("layout_report.json")));
  const PanelLayout back = layout_from_json(slurp(a.file("layout.json")));
  CHECK(back.elements.size() == 144);
}

TEST_CASE("forward then retrieve round trips through files") {
  TempDir dir;
  {
    std::ofstream model(dir.file("model.json"));
    model << R"({
      "eps": {"static_value": 1.0, "strength": 1.0, "resonance_hz": 4.8e9, "damping_hz": 1.5e8},
      "mu":  {"static_value": 1.0, "strength": 0.8, "resonance_hz": 4.8e9, "damping_hz": 1.5e8}
    })";
  }
  CHECK(run_quiet({"--out", dir.str(), "forward", "--model", dir.file("model.json"), "--points",
                   "150", "--format", "db", "--unit", "mhz"}) == 0);
  CHECK(run_quiet({"--out", dir.str(), "retrieve", "--input", dir.file("sweep.s2p"),
                   "--thickness-mm", "0.8"}) == 0);
  const std::string csv = slurp(dir.file("effective_params.csv"));
  CHECK(csv.rfind("freq_hz,", 0) == 0);
  const auto bands = nlohmann::json::parse(slurp(dir.file("dng_bands.json")));
  REQUIRE(bands["bands"].size() == 1);
  CHECK(bands["bands"][0]["lo_hz"].get<double>() < 5.5e9);
  CHECK(bands["bands"][0]["hi_hz"].get<double>() > 5.5e9);
}

TEST_CASE("forward csv flag switches the sweep format") {
  TempDir dir;
  {
    std::ofstream model(dir.file("model.json"));
    model << R"({"eps": {"static_value": 4.0}, "mu": {"static_value": 1.0}})";
  }
  CHECK(run_quiet({"--out", dir.str(), "forward", "--model", dir.file("model.json"), "--points",
                   "10", "--csv"}) == 0);
  CHECK(slurp(dir.file("sweep.csv")).rfind("freq_hz,s11_re", 0) == 0);
}

TEST_CASE("steer exports matrix, pattern, and loss report") {
  TempDir dir;
  CHECK(run_quiet({"--out", dir.str(), "steer", "--nx", "8", "--ny", "8", "--tgt-theta", "25",
                   "--theta-step", "5", "--phi-step", "30"}) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("steer_report.json")));
  CHECK(rep["quantization_loss_db"].get<double>() > 0.0);
  CHECK(rep["af_target_continuous_db"].get<double>() >
        rep["af_target_db"].get<double>());
  const auto matrix = nlohmann::json::parse(slurp(dir.file("load_matrix.json")));
  CHECK(matrix.size() == 64);
  CHECK(slurp(dir.file("pattern.csv")).rfind("theta_deg,phi_deg", 0) == 0);
}

TEST_CASE("sense runs are reproducible per seed") {
  TempDir a, b, c;
  const std::vector<std::string> base{"sense", "--nx",        "8",  "--ny",
                                      "8",     "--tx-theta",  "20", "--rx-theta",
                                      "40",    "--phi-step",  "15"};
  auto with_out = [&](const TempDir& d, const std::string& seed) {
    std::vector<std::string> v{"--out", d.str(), "--seed", seed};
    v.insert(v.end(), base.begin(), base.end());
    return v;
  };
  CHECK(run_quiet(with_out(a, "5")) == 0);
  CHECK(run_quiet(with_out(b, "5")) == 0);
  CHECK(run_quiet(with_out(c, "6")) == 0);
  CHECK(slurp(a.file("snapshots_group1.csv")) == slurp(b.file("snapshots_group1.csv")));
  CHECK(slurp(a.file("snapshots_group1.csv")) != slurp(c.file("snapshots_group1.csv")));
  const auto doa = nlohmann::json::parse(slurp(a.file("doa_group1.json")));
  CHECK(doa["group"] == 1);
  const auto iso = nlohmann::json::parse(slurp(a.file("isolation.json")));
  CHECK(iso["group1_db"].get<double>() > 0.0);
}

TEST_CASE("loop writes an episode log and summary") {
  TempDir dir;
  CHECK(run_quiet({"--out", dir.str(), "loop", "--nx", "8", "--ny", "8", "--num-scenes", "4",
                   "--ideal-sensing", "--write-lut"}) == 0);
  const std::string log = slurp(dir.file("episode_log.csv"));
  CHECK(log.rfind("step,", 0) == 0);
  CHECK(std::count(log.begin(), log.end(), '\n') == 5);  // header + 4 steps
  const auto rep = nlohmann::json::parse(slurp(dir.file("loop_report.json")));
  CHECK(rep["scenes"] == 4);
  CHECK(rep["median_loss_db"].get<double>() >= 0.0);
  CHECK(fs::exists(dir.file("lut.json")));
  const auto scenes = nlohmann::json::parse(slurp(dir.file("scenes_resolved.json")));
  CHECK(scenes.size() == 4);
}

TEST_CASE("loop accepts an explicit scene file") {
  TempDir dir;
  {
    std::ofstream scenes(dir.file("scenes.json"));
    scenes << R"([{"tx": {"theta_deg": 10, "phi_deg": 0}, "rx": {"theta_deg": 20, "phi_deg": 90},
                   "snr_db": "inf", "snapshots": 8, "seed": 3}])";
  }
  CHECK(run_quiet({"--out", dir.str(), "loop", "--nx", "8", "--ny", "8", "--scenes",
                   dir.file("scenes.json")}) == 0);
  const auto rep = nlohmann::json::parse(slurp(dir.file("loop_report.json")));
  CHECK(rep["scenes"] == 1);
}

TEST_CASE("thickness is validated before the input file is touched") {
  std::string err;
  const int rc = run_quiet(
      {"retrieve", "--input", "/nonexistent/sweep.s2p", "--thickness-mm", "-1"}, &err);
  CHECK(rc == 1);
  CHECK(err.find("InvalidSpec") != std::string::npos);
  CHECK(err.find("IoError") == std::string::npos);
}

TEST_CASE("missing input surfaces as a clean error exit") {
  std::string err;
  const int rc =
      run_quiet({"retrieve", "--input", "/nonexistent/sweep.s2p", "--thickness-mm", "1"}, &err);
  CHECK(rc == 1);
  CHECK(err.find("IoError") != std::string::npos);
}

TEST_CASE("parse errors exit nonzero") {
  CHECK(run_quiet({"steer", "--nx", "8", "--ny", "8"}) != 0);     // missing required option
  CHECK(run_quiet({"--no-such-flag", "checkfit"}) != 0);
  CHECK(run_quiet({}) != 0);  // subcommand required
}

TEST_CASE("output directory falls back to the environment variable") {
  TempDir dir;
  const std::string target = dir.file("env_out");
  ::setenv(kOutputDirEnvVar, target.c_str(), 1);
  const int rc = run_quiet({"checkfit"});
  ::unsetenv(kOutputDirEnvVar);
  CHECK(rc == 0);
  CHECK(fs::exists(fs::path(target) / "fit_report.json"));
}

TEST_CASE("malformed sweep input reports the offending line") {
  TempDir dir;
  {
    std::ofstream bad(dir.file("bad.s2p"));
    bad << "# GHz S RI R 50\n5.0 0.1 0 0.9 0\n";
  }
  std::string err;
  const int rc = run_quiet(
      {"--out", dir.str(), "retrieve", "--input", dir.file("bad.s2p"), "--thickness-mm", "1"},
      &err);
  CHECK(rc == 1);
  CHECK(err.find("MalformedDataLine") != std::string::npos);
  CHECK(err.find("line 2") != std::string::npos);
}
