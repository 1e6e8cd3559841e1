#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace besovmm::lp {

/// minimize c^T x  subject to  A x >= b,  x_j >= 0 unless free[j].
/// Rows are sparse.
struct Problem {
  struct Row {
    std::vector<std::pair<std::size_t, double>> coeffs;
    double rhs = 0.0;
  };

  std::vector<double> cost;
  std::vector<bool> free;
  std::vector<Row> rows;

  std::size_t num_vars() const noexcept { return cost.size(); }
  std::size_t add_var(double c, bool is_free = false) {
    cost.push_back(c);
    free.push_back(is_free);
    return cost.size() - 1;
  }
  void add_row(std::vector<std::pair<std::size_t, double>> coeffs, double rhs) {
    rows.push_back({std::move(coeffs), rhs});
  }
};

struct Options {
  double gap_tol = 1e-11;
  double feas_tol = 1e-10;
  double fallback_gap_tol = 1e-9;  // accepted for the best iterate if gap_tol is never reached
  int max_iterations = 300;
};

struct Result {
  std::vector<double> x;
  std::vector<double> y;  // row multipliers, >= 0
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Mehrotra predictor-corrector interior point on the normal equations.
Result solve(const Problem& problem, const Options& options = {});

/// Plain-text dump of the instance (one row per line).
std::string to_text(const Problem& problem);

/// Writes the dump to a file in the temp directory, returns the path.
std::string dump_to_temp(const Problem& problem, const std::string& tag);

}  // namespace besovmm::lp
