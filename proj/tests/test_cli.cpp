#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "fogopt/format.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FOGOPT_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::string out;
  std::size_t k = 0;
  while ((k = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, k);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(line);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() /
                   ("fogopt_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("optimize prints the reference optimum") {
  const auto res = run_cli("optimize --a 50 --R 3.825 --n 200 --alpha 1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("7.927") != std::string::npos);

  const auto js = run_cli("optimize --a 50 --R 3.825 --n 200 --alpha 1 --format json");
  CHECK(js.exit_code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j.at("p_analytic").get<double>() == Catch::Approx(0.0396341).margin(1e-6));
  CHECK(j.at("fog_count_n1").get<double>() == Catch::Approx(7.9268).margin(1e-3));
}

TEST_CASE("optimize honors paper defaults and env vars") {
  const auto res = run_cli("optimize --paper-defaults --n 200 --alpha 1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("7.927") != std::string::npos);

  const std::string cmd = std::string("FOGOPT_ALPHA=1 ") + FOGOPT_BIN +
                          " optimize --a 50 --R 3.825 --n 200 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::string out;
  std::size_t k = 0;
  while ((k = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, k);
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(out.find("7.927") != std::string::npos);
}

TEST_CASE("optimize exit codes") {
  CHECK(run_cli("optimize --a 50 --R 3.825 --n 200 --alpha 3").exit_code == 2);
  CHECK(run_cli("optimize --a 50 --R 3.825").exit_code == 2);
  CHECK(run_cli("optimize --a 1 --R 0.9 --n 2 --alpha 1").exit_code == 3);
}

TEST_CASE("config file loads and command line wins") {
  const auto dir = scratch_dir();
  const auto cfg_path = dir / "cfg.json";
  std::ofstream(cfg_path) << R"({"a": 50, "R": 3.825, "n": 800, "alpha": 1})";
  const auto res = run_cli("optimize --config " + cfg_path.string() +
                           " --n 200 --format json");
  CHECK(res.exit_code == 0);
  CHECK(nlohmann::json::parse(res.out).at("fog_count_n1").get<double>() ==
        Catch::Approx(7.9268).margin(1e-3));
}

TEST_CASE("tables reproduce the nine reference rows") {
  const auto res = run_cli("tables");
  REQUIRE(res.exit_code == 0);
  std::istringstream is(res.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "alpha,n,p_analytic,p_numeric,avg_end_devices,avg_fog_nodes");
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto f = split(line, ',');
    REQUIRE(f.size() == 6);
    // row self-consistency at full precision
    const double n = std::stod(f[1]), pa = std::stod(f[2]);
    CHECK(std::stod(f[5]) == Catch::Approx(n * pa).epsilon(1e-9));
    CHECK(std::stod(f[4]) == Catch::Approx((1.0 - pa) / pa).epsilon(1e-9));
    if (f[0] == "1" && f[1] == "400") {
      CHECK(std::stod(f[2]) == Catch::Approx(0.028).margin(5e-4));
      CHECK(std::stod(f[5]) == Catch::Approx(11.2).margin(0.05));
    }
    if (f[0] == "2" && f[1] == "800")
      CHECK(std::stod(f[4]) == Catch::Approx(195.07).margin(0.05));
    if (f[0] == "4" && f[1] == "200")
      CHECK(std::stod(f[5]) == Catch::Approx(1.34).margin(0.05));
  }
  CHECK(rows == 9);
}

TEST_CASE("objective sweep finds the interior minimum") {
  const auto fine = run_cli(
      "objective-sweep --alpha 1 --paper-defaults --n-list 200 --p-grid 0.005:0.2:0.001");
  REQUIRE(fine.exit_code == 0);

  auto argmin_of = [](const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);  // header
    double best_p = 0.0, best_j = std::numeric_limits<double>::infinity();
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto f = split(line, ',');
      const double p = std::stod(f[2]), j = std::stod(f[3]);
      if (j < best_j) {
        best_j = j;
        best_p = p;
      }
    }
    return best_p;
  };
  const double fine_min = argmin_of(fine.out);
  CHECK(fine_min == Catch::Approx(0.0396).margin(1.5e-3));

  const auto coarse = run_cli(
      "objective-sweep --alpha 1 --paper-defaults --n-list 200 --p-grid 0.005:0.2:0.005");
  REQUIRE(coarse.exit_code == 0);
  CHECK(std::abs(argmin_of(coarse.out) - fine_min) <= 0.005 + 1e-12);

  CHECK(run_cli("objective-sweep --alpha 2 --paper-defaults --p-grid 1.5:2:0.1")
            .exit_code == 2);
}

TEST_CASE("simulate writes deterministic CSV plus metadata") {
  const auto dir = scratch_dir();
  const std::string base = (dir / "rr").string();
  const std::string cmd = "simulate --a 50 --R 3.825 --n 200 --alpha 2 "
                          "--snr 0:10:5 --trials 25 --seed 42 --out " + base;
  const auto first = run_cli(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out.find("ratio") != std::string::npos);
  const auto csv1 = slurp(base + ".csv");
  const auto meta = nlohmann::json::parse(slurp(base + ".meta.json"));
  CHECK(meta.at("seed") == 42);
  CHECK(meta.at("trials") == 25);
  CHECK(meta.at("prng") == "mt19937_64");

  const auto second = run_cli(cmd);
  REQUIRE(second.exit_code == 0);
  CHECK(slurp(base + ".csv") == csv1);

  // full-precision round-trip: re-rendering parsed fields reproduces the bytes
  std::istringstream is(csv1);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    REQUIRE(f.size() == 4);
    CHECK(fogopt::fmt_full(std::stod(f[1])) == f[1]);
    CHECK(fogopt::fmt_full(std::stod(f[3])) == f[3]);
    CHECK(std::stod(f[3]) ==
          Catch::Approx(std::stod(f[1]) / std::stod(f[2])).epsilon(1e-12));
  }

  CHECK(run_cli("simulate --a 50 --R 3.825 --n 200 --alpha 2 --trials 0 --out " +
                base).exit_code == 2);
  CHECK(run_cli("simulate --a 50 --R 3.825 --n 200 --alpha 2 --snr 10:10:5 "
                "--trials 2 --out /nonexistent_dir/x").exit_code == 4);
}

TEST_CASE("place exports a placement and is reproducible") {
  const auto dir = scratch_dir();
  const std::string base = (dir / "pl").string();
  const std::string cmd = "place --a 10 --n 40 --n1 4 --seed 7 --out " + base;
  REQUIRE(run_cli(cmd).exit_code == 0);
  const auto csv1 = slurp(base + ".csv");
  const auto json1 = slurp(base + ".json");

  std::istringstream is(csv1);
  std::string line;
  int rows = 0, fogs = 0;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ++rows;
    if (line.find(",fog,") != std::string::npos) ++fogs;
  }
  CHECK(rows == 40);
  CHECK(fogs == 4);

  REQUIRE(run_cli(cmd).exit_code == 0);
  CHECK(slurp(base + ".csv") == csv1);
  CHECK(slurp(base + ".json") == json1);

  CHECK(run_cli("place --a 10 --n 40 --n1 40 --seed 7 --out " + base).exit_code == 2);
}
