#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "besovmm/smoothness.hpp"

namespace besovmm::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kPrecondition = 3, kEvaluation = 4 };

struct RunConfig {
  /// JSON file, or a generator: "path:n[:spacing[:weight]]", "grid:nx:ny[:spacing[:weight]]",
  /// "geometric:n:radius[:weight]" (geometric uses --seed).
  std::string space;
  /// JSON file, or a generator (see corpus_from_generator).
  std::string corpus = "tents";
  /// Spec JSON text (object or array) or a path to it.
  std::string spec = R"({"family":"lp","p":1})";
  std::vector<double> alpha{1.0};
  std::vector<double> s{0.5};
  std::vector<double> q{1.0};
  std::vector<double> t;  // kfun; empty means a default log grid
  std::vector<double> epsilon{1.0, 1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> p{0.5, 1.0, 2.0};                                  // regimes
  std::vector<double> r{0.5, 1.0, 2.0, std::numeric_limits<double>::infinity()};  // regimes
  std::vector<double> beta{-1.0, 0.0, 1.0};                             // regimes
  std::vector<double> Q;  // regimes; empty means the space's Q, or 1 without a space
  std::string theorem;
  std::string out = ".";
  std::uint64_t seed = 1;
  double grid_ratio = kDefaultGridRatio;
  std::size_t mo1_grid = 256;
};

struct RunResult {
  int exit_code = kOk;
  std::string message;
  std::vector<std::string> artifacts;
};

/// Runs one subcommand and writes <out>/<name>.json and <out>/<name>.csv.
RunResult run(const std::string& command, const RunConfig& config);

/// "1,0.5,inf" -> {1, 0.5, inf}. Throws ValidationError.
std::vector<double> parse_list(const std::string& text);

/// Entry point shared by the executable and the tests.
int main_entry(int argc, char** argv);

}  // namespace besovmm::cli
