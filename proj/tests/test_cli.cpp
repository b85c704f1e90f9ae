#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* cli_path() { return WPTEST_CLI_PATH; }

struct RunResult {
  int exit_code;
  std::string err;
};

// run the binary with stdout dropped and stderr captured
RunResult run_cli(const std::string& args, const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path errfile = dir / "stderr.txt";
  const std::string cmd = std::string(cli_path()) + " " + args +
                          " > /dev/null 2> " + errfile.string();
  const int raw = std::system(cmd.c_str());
  std::ifstream in(errfile);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

const fs::path kBase = fs::temp_directory_path() / "whitpack_cli_test";

}  // namespace

TEST_CASE("mode subcommand tabulates a mode with correct boundary value") {
  const fs::path dir = kBase / "mode";
  fs::remove_all(dir);
  const auto r = run_cli(
      "mode --kappa 0.5 --x-max 20 --points 101 --out-dir " + dir.string(),
      dir);
  REQUIRE(r.exit_code == 0);

  const std::string csv = slurp(dir / "mode.csv");
  CHECK(count_lines(csv) == 103);  // preamble + header + 101 rows
  CHECK(csv.rfind("# kappa=5.0", 0) == 0);
  CHECK(csv.find("x,re_w,im_w") != std::string::npos);
  // first row is x=0 with w = 2 i kappa = i
  CHECK(csv.find("\n0.0000000000000000e+00,0.0000000000000000e+00,"
                 "1.0000000000000000e+00\n") != std::string::npos);

  const auto j = json::parse(slurp(dir / "mode.json"));
  CHECK(j["kappa"] == 0.5);
  CHECK(j["points"] == 101);
}

TEST_CASE("table1 subcommand emits all cells within tolerance") {
  const fs::path dir = kBase / "table1";
  fs::remove_all(dir);
  const auto r = run_cli("table1 --out-dir " + dir.string(), dir);
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(dir / "table1.csv");
  CHECK(count_lines(csv) == 21);  // header + 20 cells
  const auto j = json::parse(slurp(dir / "table1.json"));
  CHECK(j["cells"] == 20);
  CHECK(j["max_rel_error"].get<double>() < 0.05);
}

TEST_CASE("invalid physics input exits 2 with a one-line json error") {
  const fs::path dir = kBase / "err";
  fs::remove_all(dir);
  const auto r = run_cli(
      "packet --energy-ev -1 --out-dir " + dir.string(), dir);
  CHECK(r.exit_code == 2);
  REQUIRE(!r.err.empty());
  CHECK(count_lines(r.err) == 1);
  const auto j = json::parse(r.err);
  CHECK(j["error"] == "domain");
  CHECK(j["exit_code"] == 2);
  CHECK(j["message"].is_string());
}

TEST_CASE("unknown flags exit 2 with a usage error") {
  const fs::path dir = kBase / "usage";
  fs::remove_all(dir);
  const auto r = run_cli("mode --kappa 0.5 --no-such-flag", dir);
  CHECK(r.exit_code == 2);
  const auto j = json::parse(r.err);
  CHECK(j["error"] == "usage");
}

TEST_CASE("outputs are byte-identical across thread counts") {
  const fs::path d1 = kBase / "det1";
  const fs::path d3 = kBase / "det3";
  fs::remove_all(d1);
  fs::remove_all(d3);
  const std::string common = "mode --kappa 0.1356 --x-max 50 --points 400";
  const auto r1 =
      run_cli(common + " --threads 1 --out-dir " + d1.string(), d1);
  const auto r3 =
      run_cli(common + " --threads 3 --out-dir " + d3.string(), d3);
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp(d1 / "mode.csv") == slurp(d3 / "mode.csv"));
  CHECK(slurp(d1 / "mode.json") == slurp(d3 / "mode.json"));
}

TEST_CASE("config file supplies long-option values") {
  const fs::path dir = kBase / "config";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.ini";
  {
    std::ofstream out(cfg);
    out << "[mode]\n"
        << "kappa=0.25\n"
        << "x-max=10.0\n"
        << "points=51\n"
        << "out-dir=" << dir.string() << "\n";
  }
  const auto r = run_cli("--config " + cfg.string() + " mode", dir);
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(slurp(dir / "mode.json"));
  CHECK(j["kappa"] == 0.25);
  CHECK(j["points"] == 51);
}

TEST_CASE("packet subcommand writes per-time fields and a summary") {
  const fs::path dir = kBase / "packet";
  fs::remove_all(dir);
  const auto r = run_cli(
      "packet --energy-ev 4 --spread-ev 0.05 --times-fs 0 --times-fs 0.4 "
      "--r-max-a0 40 --out-dir " +
          dir.string(),
      dir);
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "packet_t0.csv"));
  CHECK(fs::exists(dir / "packet_t1.csv"));
  const auto j = json::parse(slurp(dir / "packet.json"));
  CHECK(j["norm_constant"].get<double>() > 0.0);
  CHECK(j["params"]["energy_ev"] == 4.0);
  CHECK(j["times"].size() == 2);
  CHECK(j["times"][1]["predicted_center_x"].get<double>() > 0.0);
}
