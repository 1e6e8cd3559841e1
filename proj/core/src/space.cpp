#include "besovmm/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "besovmm/errors.hpp"
#include "besovmm/random.hpp"
#include "json.hpp"

namespace besovmm {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << ")";
  return os.str();
}

}  // namespace

Space::Space(std::size_t n, std::vector<double> dist, std::vector<double> weights)
    : n_(n), dist_(std::move(dist)), weights_(std::move(weights)) {
  if (n_ == 0) throw ValidationError("space must have at least one point");
  if (dist_.size() != n_ * n_) throw ValidationError("distance matrix must be n x n");
  if (weights_.size() != n_) throw ValidationError("weights must have n entries");
  for (std::size_t x = 0; x < n_; ++x) {
    if (!(weights_[x] > 0.0) || !std::isfinite(weights_[x]))
      throw ValidationError("weight at " + std::to_string(x) + " must be positive and finite");
  }
  for (std::size_t x = 0; x < n_; ++x) {
    if (distance(x, x) != 0.0) throw ValidationError("nonzero diagonal at " + std::to_string(x));
    for (std::size_t y = x + 1; y < n_; ++y) {
      const double a = distance(x, y);
      const double b = distance(y, x);
      if (!std::isfinite(a) || !std::isfinite(b))
        throw ValidationError("non-finite distance at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      if (std::abs(a - b) > kTriangleTol * std::max(1.0, std::abs(a)))
        throw ValidationError("asymmetric distance at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      if (!(a > 0.0))
        throw ValidationError("distinct points at zero distance (" + std::to_string(x) + "," +
                              std::to_string(y) + ")");
    }
  }
  // d(i,k) <= d(i,j) + d(j,k)
  for (std::size_t i = 0; i < n_; ++i) {
    const double* di = &dist_[i * n_];
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i) continue;
      const double dij = di[j];
      const double* dj = &dist_[j * n_];
      for (std::size_t k = 0; k < n_; ++k) {
        if (di[k] > dij + dj[k] + kTriangleTol * std::max(1.0, di[k]))
          throw ValidationError("triangle inequality violated at " + triple(i, j, k));
      }
    }
  }
  build_caches();
}

void Space::build_caches() {
  total_mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  diameter_ = 0.0;
  min_distance_ = std::numeric_limits<double>::infinity();
  levels_.clear();
  levels_.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = x + 1; y < n_; ++y) {
      const double d = distance(x, y);
      diameter_ = std::max(diameter_, d);
      min_distance_ = std::min(min_distance_, d);
      levels_.push_back(d);
    }
  if (n_ == 1) min_distance_ = 0.0;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());

  sorted_dist_.assign(n_ * n_, 0.0);
  cum_weight_.assign(n_ * n_, 0.0);
  std::vector<std::size_t> order(n_);
  for (std::size_t x = 0; x < n_; ++x) {
    std::iota(order.begin(), order.end(), 0);
    const double* row = &dist_[x * n_];
    std::stable_sort(order.begin(), order.end(),
                     [row](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    double acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      sorted_dist_[x * n_ + k] = row[order[k]];
      acc += weights_[order[k]];
      cum_weight_[x * n_ + k] = acc;
    }
  }
}

std::vector<std::size_t> Space::ball(std::size_t x, double r) const {
  std::vector<std::size_t> out;
  const double* row = &dist_[x * n_];
  for (std::size_t y = 0; y < n_; ++y)
    if (row[y] < r) out.push_back(y);
  return out;
}

double Space::ball_measure(std::size_t x, double r) const {
  const double* first = &sorted_dist_[x * n_];
  const auto count = static_cast<std::size_t>(std::lower_bound(first, first + n_, r) - first);
  return count == 0 ? 0.0 : cum_weight_[x * n_ + count - 1];
}

Space Space::with_scaled_weights(double lambda) const {
  if (!(lambda > 0.0)) throw ValidationError("weight scale must be positive");
  std::vector<double> w(weights_);
  for (double& v : w) v *= lambda;
  Space out = *this;
  out.weights_ = std::move(w);
  out.build_caches();
  return out;
}

// Diagnostics --------------------------------------------------------------

double doubling_constant(const Space& space) {
  const std::size_t n = space.size();
  double best = 1.0;
  std::vector<double> radii;
  radii.reserve(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    radii.clear();
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      radii.push_back(space.distance(x, y));
      radii.push_back(0.5 * space.distance(x, y));
    }
    // Both balls are constant on (a,b] between consecutive critical values,
    // so the right endpoint represents the interval.
    for (double r : radii) {
      const double inner = space.ball_measure(x, r);
      if (inner <= 0.0) continue;
      best = std::max(best, space.ball_measure(x, 2.0 * r) / inner);
    }
  }
  return best;
}

double upper_dimension(const Space& space) { return std::log2(doubling_constant(space)); }

double noncollapsing_constant(const Space& space) {
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < space.size(); ++x) b = std::min(b, space.ball_measure(x, 1.0));
  return b;
}

SpaceDiagnostics diagnose(const Space& space) {
  SpaceDiagnostics d;
  d.doubling_constant = doubling_constant(space);
  d.upper_dimension = std::log2(d.doubling_constant);
  d.noncollapsing = noncollapsing_constant(space);
  d.diameter = space.diameter();
  d.min_distance = space.min_distance();
  d.total_mass = space.total_mass();
  return d;
}

std::vector<double> critical_radii(const Space& space) {
  std::vector<double> pts;
  for (double d : space.distance_levels()) {
    pts.push_back(d);
    pts.push_back(0.5 * d);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> out;
  if (pts.empty()) return {1.0};
  out.push_back(0.5 * pts.front());
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    out.push_back(pts[k + 1]);
    out.push_back(0.5 * (pts[k] + pts[k + 1]));
  }
  out.push_back(pts.front());
  out.push_back(2.0 * pts.back() + 1.0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Builders -----------------------------------------------------------------

Space space_from_graph(std::size_t n, const std::vector<Edge>& edges, std::vector<double> weights) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t x = 0; x < n; ++x) d[x * n + x] = 0.0;
  for (const Edge& e : edges) {
    if (e.a >= n || e.b >= n) throw ValidationError("edge endpoint out of range");
    if (e.a == e.b) continue;
    if (!(e.length > 0.0) || !std::isfinite(e.length)) throw ValidationError("edge length must be positive");
    d[e.a * n + e.b] = std::min(d[e.a * n + e.b], e.length);
    d[e.b * n + e.a] = std::min(d[e.b * n + e.a], e.length);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double cand = dik + d[k * n + j];
        if (cand < d[i * n + j]) d[i * n + j] = cand;
      }
    }
  for (std::size_t i = 0; i < n * n; ++i)
    if (d[i] == inf) throw ValidationError("graph is disconnected");
  // symmetrize exactly
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
  return Space(n, std::move(d), std::move(weights));
}

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

Space space_from_coords(const std::vector<std::vector<double>>& coords, std::vector<double> weights) {
  const std::size_t n = coords.size();
  if (n == 0) throw ValidationError("space must have at least one point");
  for (const auto& c : coords)
    if (c.size() != coords.front().size()) throw ValidationError("coordinates of mixed dimension");
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = euclid(coords[i], coords[j]);
  return Space(n, std::move(d), std::move(weights));
}

Space make_path(std::size_t n, double spacing, double weight) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, spacing});
  return space_from_graph(n, edges, std::vector<double>(n, weight));
}

Space make_grid(std::size_t nx, std::size_t ny, double spacing, double weight, GridMetric metric) {
  const std::size_t n = nx * ny;
  if (metric == GridMetric::euclidean) {
    std::vector<std::vector<double>> coords;
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i)
        coords.push_back({spacing * static_cast<double>(i), spacing * static_cast<double>(j)});
    return space_from_coords(coords, std::vector<double>(n, weight));
  }
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t v = j * nx + i;
      if (i + 1 < nx) edges.push_back({v, v + 1, spacing});
      if (j + 1 < ny) edges.push_back({v, v + nx, spacing});
    }
  return space_from_graph(n, edges, std::vector<double>(n, weight));
}

Space make_random_geometric(std::size_t n, double radius, std::uint64_t seed, double weight) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclid(pts[i], pts[j]);
      if (d < radius) edges.push_back({i, j, d});
    }
  // union-find over components, then join the closest inter-component pair
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : edges) parent[find(e.a)] = find(e.b);
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (find(i) == find(j)) continue;
        const double d = euclid(pts[i], pts[j]);
        if (d < best) best = d, ba = i, bb = j;
      }
    if (!std::isfinite(best)) break;
    edges.push_back({ba, bb, best});
    parent[find(ba)] = find(bb);
  }
  return space_from_graph(n, edges, std::vector<double>(n, weight));
}

// JSON -----------------------------------------------------------------------

Space space_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("space JSON: ") + e.what());
  }
  try {
    if (j.contains("dist")) {
      const auto rows = j.at("dist").get<std::vector<std::vector<double>>>();
      const std::size_t n = rows.size();
      std::vector<double> d;
      d.reserve(n * n);
      for (const auto& r : rows) {
        if (r.size() != n) throw ValidationError("distance matrix must be square");
        d.insert(d.end(), r.begin(), r.end());
      }
      std::vector<double> w = j.contains("weights") ? j.at("weights").get<std::vector<double>>()
                                                    : std::vector<double>(n, 1.0);
      return Space(n, std::move(d), std::move(w));
    }
    if (j.contains("coords")) {
      const auto coords = j.at("coords").get<std::vector<std::vector<double>>>();
      const std::size_t n = coords.size();
      std::vector<double> w = j.contains("weights") ? j.at("weights").get<std::vector<double>>()
                                                    : std::vector<double>(n, 1.0);
      const std::string metric = j.value("metric", std::string("euclidean"));
      if (metric == "euclidean") return space_from_coords(coords, std::move(w));
      if (metric != "graph") throw ValidationError("unknown metric '" + metric + "'");
      std::vector<Edge> edges;
      for (const auto& e : j.at("edges")) {
        const auto a = e.at(0).get<std::size_t>();
        const auto b = e.at(1).get<std::size_t>();
        if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
        const double len = e.size() > 2 ? e.at(2).get<double>() : euclid(coords[a], coords[b]);
        edges.push_back({a, b, len});
      }
      return space_from_graph(n, edges, std::move(w));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("space JSON: ") + e.what());
  }
  throw ValidationError("space JSON needs a 'dist' or 'coords' field");
}

Space load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open space file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return space_from_json(ss.str());
}

std::string space_to_json(const Space& space) {
  nlohmann::json j;
  const std::size_t n = space.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) rows[i][k] = space.distance(i, k);
  j["dist"] = rows;
  j["weights"] = std::vector<double>(space.weights().begin(), space.weights().end());
  return j.dump();
}

}  // namespace besovmm
