#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace besovmm {

/// Finite metric measure space: symmetric distance matrix plus positive atom weights.
class Space {
 public:
  static constexpr double kTriangleTol = 1e-12;

  /// Row-major n*n distance matrix. Validates symmetry, zero diagonal,
  /// positivity off the diagonal, the triangle inequality and weights > 0.
  Space(std::size_t n, std::vector<double> dist, std::vector<double> weights);

  std::size_t size() const noexcept { return n_; }
  double distance(std::size_t x, std::size_t y) const noexcept { return dist_[x * n_ + y]; }
  std::span<const double> distances() const noexcept { return dist_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::size_t x) const noexcept { return weights_[x]; }
  double total_mass() const noexcept { return total_mass_; }
  double diameter() const noexcept { return diameter_; }
  /// Smallest positive distance; 0 for a one-point space.
  double min_distance() const noexcept { return min_distance_; }

  /// B(x,r) = {y : d(x,y) < r}, indices in increasing order.
  std::vector<std::size_t> ball(std::size_t x, double r) const;
  double ball_measure(std::size_t x, double r) const;

  /// Sorted distinct positive distances.
  const std::vector<double>& distance_levels() const noexcept { return levels_; }

  Space with_scaled_weights(double lambda) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
  double diameter_ = 0.0;
  double min_distance_ = 0.0;
  std::vector<double> levels_;
  // per-point distances sorted ascending with cumulative weights
  std::vector<double> sorted_dist_;
  std::vector<double> cum_weight_;

  void build_caches();
};

struct SpaceDiagnostics {
  double doubling_constant = 1.0;  // C_mu
  double upper_dimension = 0.0;    // Q = log2 C_mu
  double noncollapsing = 0.0;      // b = min_x mu(B(x,1))
  double diameter = 0.0;
  double min_distance = 0.0;
  double total_mass = 0.0;
};

/// max over centers and critical radii of mu(B(x,2r)) / mu(B(x,r)).
double doubling_constant(const Space& space);
double upper_dimension(const Space& space);
double noncollapsing_constant(const Space& space);
SpaceDiagnostics diagnose(const Space& space);

/// One radius inside every interval on which both B(x,r) and B(x,2r) are
/// constant for every x, plus one radius beyond the diameter.
std::vector<double> critical_radii(const Space& space);

// Builders ----------------------------------------------------------------

/// Path graph 0..n-1 with edge length `spacing`, uniform atom weight.
Space make_path(std::size_t n, double spacing = 1.0, double weight = 1.0);

enum class GridMetric { euclidean, graph };
Space make_grid(std::size_t nx, std::size_t ny, double spacing = 1.0, double weight = 1.0,
                GridMetric metric = GridMetric::graph);

/// Random points in the unit square joined when closer than `radius`,
/// shortest-path metric with Euclidean edge lengths. Components are joined
/// through their closest pair so the metric is finite.
Space make_random_geometric(std::size_t n, double radius, std::uint64_t seed,
                            double weight = 1.0);

Space space_from_coords(const std::vector<std::vector<double>>& coords,
                        std::vector<double> weights);

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double length = 1.0;
};
Space space_from_graph(std::size_t n, const std::vector<Edge>& edges, std::vector<double> weights);

/// Accepts {"dist":[[...]],"weights":[...]} or
/// {"coords":[[...]],"metric":"euclidean"|"graph","edges":[...],"weights":[...]}.
Space space_from_json(const std::string& text);
Space load_space(const std::string& path);
std::string space_to_json(const Space& space);

}  // namespace besovmm
