#include <filesystem>
#include <fstream>
#include <sstream>

#include "besovmm/errors.hpp"
#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace besovmm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("besovmm_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("list parsing") {
  const auto v = cli::parse_list("1,0.5, inf");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.5);
  CHECK(std::isinf(v[2]));
  CHECK(cli::parse_list("1,2,").size() == 2);
  CHECK_THROWS_AS(cli::parse_list(""), ValidationError);
  CHECK_THROWS_AS(cli::parse_list("abc"), ValidationError);
}

TEST_CASE("space-info on two points") {
  cli::RunConfig cfg;
  cfg.space = "path:2";
  cfg.out = scratch("info").string();
  const auto res = cli::run("space-info", cfg);
  REQUIRE(res.exit_code == cli::kOk);
  const auto doc = nlohmann::json::parse(slurp(fs::path(cfg.out) / "space-info.json"));
  CHECK(doc["doubling_constant"].get<double>() == 2.0);
  CHECK(doc["upper_dimension"].get<double>() == 1.0);
  CHECK(fs::exists(fs::path(cfg.out) / "space-info.csv"));
}

TEST_CASE("verify k1 on constants") {
  cli::RunConfig cfg;
  cfg.space = "path:6";
  cfg.corpus = "constants:3";
  cfg.theorem = "k1";
  cfg.out = scratch("k1").string();
  const auto res = cli::run("verify", cfg);
  REQUIRE(res.exit_code == cli::kOk);
  const std::string csv = slurp(fs::path(cfg.out) / "verify-k1.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line.find(',') == std::string::npos) continue;
    if (line.find(",const_") == std::string::npos) continue;
    ++rows;
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) == 0.0);
  }
  CHECK(rows == 3);
}

TEST_CASE("infinito refuses when m(0) is infinite") {
  cli::RunConfig cfg;
  cfg.space = "path:6";
  cfg.theorem = "infinito";
  cfg.s = {0.5};
  cfg.out = scratch("inf").string();
  const auto res = cli::run("verify", cfg);
  CHECK(res.exit_code == cli::kPrecondition);
  CHECK(res.message.find("m(0)") != std::string::npos);
}

TEST_CASE("exit codes for bad input") {
  cli::RunConfig cfg;
  cfg.space = "path:4";
  cfg.out = scratch("bad").string();
  CHECK(cli::run("no-such-command", cfg).exit_code == cli::kUsage);
  cfg.spec = R"({"family":"lp","p":-2})";
  CHECK(cli::run("norms", cfg).exit_code == cli::kUsage);
  cfg.spec = R"({"family":"lp","p":2})";
  cfg.space = "path:0";
  CHECK(cli::run("space-info", cfg).exit_code == cli::kUsage);
}

TEST_CASE("identical runs give identical CSV") {
  cli::RunConfig cfg;
  cfg.space = "geometric:16:0.4";
  cfg.corpus = "random-uniform:4";
  cfg.seed = 7;
  cfg.t = {0.2, 1.0};
  for (const std::string cmd : {"space-info", "norms", "modulus", "besov", "kfun", "regimes"}) {
    cfg.out = scratch("det_a").string();
    const auto a = cli::run(cmd, cfg);
    REQUIRE(a.exit_code == cli::kOk);
    const std::string first = slurp(fs::path(cfg.out) / (cmd + ".csv"));
    cfg.out = scratch("det_b").string();
    const auto b = cli::run(cmd, cfg);
    REQUIRE(b.exit_code == cli::kOk);
    CHECK(slurp(fs::path(cfg.out) / (cmd + ".csv")) == first);
    CHECK(!first.empty());
  }
}

TEST_CASE("command line entry point") {
  const fs::path out = scratch("main");
  std::vector<std::string> args = {"besovmm", "space-info", "--space", "grid:3:3", "--out", out.string()};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  CHECK(cli::main_entry(static_cast<int>(argv.size()), argv.data()) == cli::kOk);
  CHECK(fs::exists(out / "space-info.json"));
  std::vector<std::string> bad = {"besovmm", "verify", "--space", "grid:3:3"};
  std::vector<char*> bargv;
  for (auto& a : bad) bargv.push_back(a.data());
  CHECK(cli::main_entry(static_cast<int>(bargv.size()), bargv.data()) == cli::kUsage);
}
