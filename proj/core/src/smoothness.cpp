#include "besovmm/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "besovmm/errors.hpp"
#include "besovmm/rearrange.hpp"
#include "besovmm/space.hpp"

namespace besovmm {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void check_function(const Space& space, std::span<const double> f) {
  if (f.size() != space.size()) throw ValidationError("function length does not match the space");
  for (double v : f)
    if (!std::isfinite(v)) throw ValidationError("function values must be finite");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

double powabs(double v, double a) { return a == 1.0 ? std::abs(v) : std::pow(std::abs(v), a); }

double root(double v, double a) { return a == 1.0 ? v : std::pow(v, 1.0 / a); }

// E at each level from the running per-point sums, with an arbitrary norm.
template <class Norm>
LevelProfile build_levels(const Space& space, std::span<const double> f, double alpha, Norm&& norm) {
  const std::size_t n = space.size();
  struct Pair {
    double d;
    std::size_t x, y;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) pairs.push_back({space.distance(x, y), x, y});
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });

  std::vector<double> num(n, 0.0);
  std::vector<double> den(space.weights().begin(), space.weights().end());
  std::vector<double> grad(n, 0.0);
  LevelProfile out;
  out.levels = space.distance_levels();
  out.values.reserve(out.levels.size());
  std::size_t p = 0;
  for (double level : out.levels) {
    while (p < pairs.size() && pairs[p].d <= level) {
      const auto [d, x, y] = pairs[p];
      (void)d;
      const double diff = powabs(f[x] - f[y], alpha);
      num[x] += space.weight(y) * diff;
      num[y] += space.weight(x) * diff;
      den[x] += space.weight(y);
      den[y] += space.weight(x);
      ++p;
    }
    for (std::size_t x = 0; x < n; ++x) grad[x] = root(num[x] / den[x], alpha);
    out.values.push_back(norm(grad));
  }
  return out;
}

}  // namespace

std::vector<double> nabla(const Space& space, std::span<const double> f, double r, double alpha) {
  check_function(space, f);
  check_alpha(alpha);
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const std::size_t n = space.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (space.distance(x, y) >= r) continue;
      den += space.weight(y);
      if (y != x) num += space.weight(y) * powabs(f[x] - f[y], alpha);
    }
    out[x] = root(num / den, alpha);
  }
  return out;
}

double modulus(const Space& space, std::span<const double> f, double r, const RISpaceSpec& spec, double alpha) {
  const auto g = nabla(space, f, r, alpha);
  return quasi_norm(convexify(spec, alpha), rearrangement(space, g));
}

double modulus_classic(const Space& space, std::span<const double> f, double r, double p) {
  const auto g = nabla(space, f, r, p);
  double acc = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) acc += space.weight(x) * std::pow(g[x], p);
  return std::pow(acc, 1.0 / p);
}

double LevelProfile::operator()(double r) const {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  // number of levels strictly below r
  const auto k = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), r) - levels.begin());
  return k == 0 ? 0.0 : values[k - 1];
}

LevelProfile level_profile(const Space& space, std::span<const double> f, const RISpaceSpec& spec, double alpha) {
  check_function(space, f);
  check_alpha(alpha);
  const RISpaceSpec eff = convexify(spec, alpha);
  return build_levels(space, f, alpha,
                      [&](const std::vector<double>& g) { return quasi_norm(eff, rearrangement(space, g)); });
}

LevelProfile level_profile_classic(const Space& space, std::span<const double> f, double p) {
  check_function(space, f);
  check_alpha(p);
  return build_levels(space, f, p, [&](const std::vector<double>& g) {
    double acc = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) acc += space.weight(x) * std::pow(g[x], p);
    return std::pow(acc, 1.0 / p);
  });
}

ModulusProfile modulus_profile(const Space& space, const LevelProfile& levels, double grid_ratio) {
  if (!(grid_ratio > 1.0)) throw DomainError("grid ratio must exceed 1");
  ModulusProfile out;
  out.tail_value = levels.tail();
  if (space.size() < 2) return out;
  const double top = 2.0 * space.diameter();
  for (double r = space.min_distance(); r <= top * (1.0 + 1e-12); r *= grid_ratio) {
    out.radii.push_back(r);
    out.values.push_back(levels(r));
  }
  return out;
}

double besov_from_levels(const LevelProfile& profile, double s, double q) {
  if (!(s > 0.0)) throw DomainError("smoothness s must be positive");
  if (!(q > 0.0)) throw DomainError("q must be positive");
  const auto& d = profile.levels;
  const auto& e = profile.values;
  if (std::isinf(q)) {
    double best = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) best = std::max(best, e[k] * std::pow(d[k], -s));
    return best;
  }
  const double sq = s * q;
  double acc = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (e[k] == 0.0) continue;
    const double lo = std::pow(d[k], -sq);
    const double hi = k + 1 < d.size() ? std::pow(d[k + 1], -sq) : 0.0;
    acc += std::pow(e[k], q) * (lo - hi) / sq;
  }
  return std::pow(acc, 1.0 / q);
}

double besov_from_grid(const ModulusProfile& profile, double s, double q) {
  if (!(s > 0.0)) throw DomainError("smoothness s must be positive");
  if (!(q > 0.0)) throw DomainError("q must be positive");
  const auto& r = profile.radii;
  const auto& e = profile.values;
  if (r.empty()) return 0.0;
  const double top = r.back();
  if (std::isinf(q)) {
    double best = profile.tail_value * std::pow(top, -s);
    for (std::size_t k = 1; k < r.size(); ++k) best = std::max(best, e[k] * std::pow(r[k - 1], -s));
    return best;
  }
  const double sq = s * q;
  double acc = std::pow(profile.tail_value, q) * std::pow(top, -sq) / sq;
  for (std::size_t k = 1; k < r.size(); ++k)
    acc += std::pow(e[k], q) * (std::pow(r[k - 1], -sq) - std::pow(r[k], -sq)) / sq;
  return std::pow(acc, 1.0 / q);
}

double besov_seminorm(const Space& space, std::span<const double> f, double s, double q, const RISpaceSpec& spec,
                      double alpha, const BesovOptions& options) {
  if (!(s > 0.0)) throw DomainError("smoothness s must be positive");
  if (!(q > 0.0)) throw DomainError("q must be positive");
  check_function(space, f);
  check_alpha(alpha);
  if (options.exact && space.distance_levels().size() <= options.max_levels)
    return besov_from_levels(level_profile(space, f, spec, alpha), s, q);
  // grid path: E sampled directly on the geometric grid
  ModulusProfile grid;
  const double top = 2.0 * space.diameter();
  for (double r = space.min_distance(); r <= top * (1.0 + 1e-12); r *= options.grid_ratio) {
    grid.radii.push_back(r);
    grid.values.push_back(modulus(space, f, r, spec, alpha));
  }
  grid.tail_value = modulus(space, f, top, spec, alpha);
  return besov_from_grid(grid, s, q);
}

// Gradients ----------------------------------------------------------------------------

GradientField::GradientField(const Space& space, std::span<const double> f, std::vector<double> g)
    : g_(std::move(g)) {
  check_function(space, f);
  if (g_.size() != space.size()) throw ValidationError("gradient length does not match the space");
  for (double v : g_)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("gradient must be finite and nonnegative");
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double lhs = std::abs(f[x] - f[y]);
      const double rhs = space.distance(x, y) * (g_[x] + g_[y]);
      if (lhs > rhs + kRelTol * lhs)
        throw ValidationError("not a Hajlasz gradient at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
}

std::vector<double> repair_gradient(const Space& space, std::span<const double> f, std::vector<double> g) {
  const std::size_t n = space.size();
  for (double& v : g) v = std::max(0.0, v);
  std::vector<double> deficit(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double need = std::abs(f[x] - f[y]) / space.distance(x, y) - g[x] - g[y];
      if (need > 0.0) {
        deficit[x] = std::max(deficit[x], need);
        deficit[y] = std::max(deficit[y], need);
      }
    }
  for (std::size_t x = 0; x < n; ++x) g[x] += deficit[x] * (1.0 + 1e-12);
  return g;
}

std::vector<double> canonical_gradient(const Space& space, std::span<const double> f) {
  check_function(space, f);
  const std::size_t n = space.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (y != x) g[x] = std::max(g[x], std::abs(f[x] - f[y]) / space.distance(x, y));
  return g;
}

std::vector<double> coordinate_descent_gradient(const Space& space, std::span<const double> f,
                                                std::vector<double> g) {
  check_function(space, f);
  const std::size_t n = space.size();
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      double need = 0.0;
      for (std::size_t y = 0; y < n; ++y)
        if (y != x) need = std::max(need, std::abs(f[x] - f[y]) / space.distance(x, y) - g[y]);
      if (need < g[x]) {
        changed = changed || (g[x] - need) > 1e-15 * g[x];
        g[x] = need;
      }
    }
    if (!changed) break;
  }
  return g;
}

HajlaszL1 hajlasz_seminorm_l1(const Space& space, std::span<const double> f) {
  check_function(space, f);
  const std::size_t n = space.size();
  lp::Problem prob;
  for (std::size_t x = 0; x < n; ++x) prob.add_var(space.weight(x));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double c = std::abs(f[x] - f[y]) / space.distance(x, y);
      if (c > 0.0) prob.add_row({{x, 1.0}, {y, 1.0}}, c);
    }
  HajlaszL1 out;
  if (prob.rows.empty()) {
    out.gradient.assign(n, 0.0);
    return out;
  }
  const lp::Result r = lp::solve(prob);
  std::vector<double> g = repair_gradient(space, f, r.x);
  double value = 0.0;
  for (std::size_t x = 0; x < n; ++x) value += space.weight(x) * g[x];
  const double gap = (value - r.dual_objective) / std::max(1e-300, std::abs(value));
  if (!r.converged || std::abs(gap) > kLpGapTol)
    throw SolverError("Hajlasz LP did not reach the duality-gap tolerance (gap " + sci(gap) + ", converged=" + (r.converged ? "yes" : "no") + ")",
                      lp::dump_to_temp(prob, "hajlasz"));
  GradientField certified(space, f, g);
  out.value = value;
  out.gradient = certified.values();
  out.certificate = {value, r.dual_objective, gap, r.iterations};
  return out;
}

HajlaszUpper hajlasz_seminorm_upper(const Space& space, std::span<const double> f, const RISpaceSpec& spec,
                                    double alpha) {
  check_function(space, f);
  check_alpha(alpha);
  const RISpaceSpec eff = convexify(spec, alpha);
  auto norm = [&](const std::vector<double>& g) { return quasi_norm(eff, rearrangement(space, g)); };

  const auto canon = canonical_gradient(space, f);
  const HajlaszL1 l1 = hajlasz_seminorm_l1(space, f);
  struct Candidate {
    const char* name;
    std::vector<double> g;
  };
  std::vector<Candidate> cands;
  cands.push_back({"canonical", canon});
  cands.push_back({"l1_optimal", l1.gradient});
  cands.push_back({"canonical_descent", coordinate_descent_gradient(space, f, canon)});
  cands.push_back({"l1_descent", coordinate_descent_gradient(space, f, l1.gradient)});

  HajlaszUpper out;
  out.value = kInfinity;
  for (auto& c : cands) {
    GradientField certified(space, f, repair_gradient(space, f, c.g));
    const double v = norm(certified.values());
    if (v < out.value) {
      out.value = v;
      out.candidate = c.name;
      out.gradient = certified.values();
    }
  }
  if (eff.family == Family::lp && eff.p >= 1.0) {
    // Hoelder on a set of mass M: ||g||_1 <= ||g||_p M^{1-1/p}
    out.lower = l1.certificate.dual * std::pow(space.total_mass(), 1.0 / eff.p - 1.0);
  }
  return out;
}

KFunctional k_functional_l1(const Space& space, std::span<const double> f, double t, bool inhomogeneous) {
  check_function(space, f);
  if (!(t > 0.0)) throw DomainError("K-functional needs t > 0");
  const std::size_t n = space.size();
  if (n > kMaxKFunctionalPoints)
    throw ValidationError("K-functional LP is limited to " + std::to_string(kMaxKFunctionalPoints) + " points");
  if (std::all_of(f.begin(), f.end(), [&](double v) { return v == f[0]; })) {
    KFunctional out;
    out.h.assign(f.begin(), f.end());
    out.gradient.assign(n, 0.0);
    if (inhomogeneous) {
      for (std::size_t x = 0; x < n; ++x) out.value += t * space.weight(x) * std::abs(f[x]);
      // h = 0 is the other candidate
      double alt = 0.0;
      for (std::size_t x = 0; x < n; ++x) alt += space.weight(x) * std::abs(f[x]);
      if (alt < out.value) {
        out.value = alt;
        out.h.assign(n, 0.0);
      }
    }
    out.certificate = {out.value, out.value, 0.0, 0};
    return out;
  }
  // Clamping h to [lo, max f] never increases either term, so h - lo >= 0 loses nothing.
  double lo = *std::min_element(f.begin(), f.end());
  if (inhomogeneous) lo = std::min(lo, 0.0);
  lp::Problem prob;
  std::vector<std::size_t> e(n), g(n), h(n), a;
  for (std::size_t x = 0; x < n; ++x) e[x] = prob.add_var(space.weight(x));
  for (std::size_t x = 0; x < n; ++x) g[x] = prob.add_var(t * space.weight(x));
  for (std::size_t x = 0; x < n; ++x) h[x] = prob.add_var(0.0);
  if (inhomogeneous) {
    a.resize(n);
    for (std::size_t x = 0; x < n; ++x) a[x] = prob.add_var(t * space.weight(x));
  }
  for (std::size_t x = 0; x < n; ++x) {
    prob.add_row({{e[x], 1.0}, {h[x], 1.0}}, f[x] - lo);
    prob.add_row({{e[x], 1.0}, {h[x], -1.0}}, lo - f[x]);
    if (inhomogeneous) {
      prob.add_row({{a[x], 1.0}, {h[x], -1.0}}, lo);
      prob.add_row({{a[x], 1.0}, {h[x], 1.0}}, -lo);
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double inv = 1.0 / space.distance(x, y);
      prob.add_row({{g[x], 1.0}, {g[y], 1.0}, {h[x], -inv}, {h[y], inv}}, 0.0);
      prob.add_row({{g[x], 1.0}, {g[y], 1.0}, {h[x], inv}, {h[y], -inv}}, 0.0);
    }
  const lp::Result r = lp::solve(prob);

  KFunctional out;
  out.h.resize(n);
  for (std::size_t x = 0; x < n; ++x) out.h[x] = r.x[h[x]] + lo;
  std::vector<double> gv(n);
  for (std::size_t x = 0; x < n; ++x) gv[x] = r.x[g[x]];
  gv = repair_gradient(space, out.h, std::move(gv));
  double value = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    value += space.weight(x) * (std::abs(f[x] - out.h[x]) + t * gv[x]);
    if (inhomogeneous) value += t * space.weight(x) * std::abs(out.h[x]);
  }
  const double scale = std::max(std::abs(value), 1e-300);
  const double gap = (value - r.dual_objective) / scale;
  if (!r.converged || std::abs(gap) > kLpGapTol)
    throw SolverError("K-functional LP did not reach the duality-gap tolerance (gap " + sci(gap) + ", converged=" + (r.converged ? "yes" : "no") + ")",
                      lp::dump_to_temp(prob, "kfunctional"));
  GradientField certified(space, out.h, gv);
  out.gradient = certified.values();
  out.value = value;
  out.certificate = {value, r.dual_objective, gap, r.iterations};
  return out;
}

KBounds k_bounds(const Space& space, std::span<const double> f, double t, const RISpaceSpec& spec, double alpha) {
  check_function(space, f);
  check_alpha(alpha);
  if (!(t > 0.0)) throw DomainError("K-functional needs t > 0");
  KBounds out;
  out.t = t;
  out.lower = modulus(space, f, t, spec, alpha);
  const double top = 2.0 * space.diameter();
  std::size_t J = 0;
  while (std::ldexp(t, static_cast<int>(J)) < top) ++J;
  const double tail = modulus(space, f, top * 2.0, spec, alpha);
  double acc = 0.0;
  for (std::size_t j = 0; j < J; ++j)
    acc += std::pow(2.0, -static_cast<double>(j) * alpha) *
           std::pow(modulus(space, f, std::ldexp(t, static_cast<int>(j)), spec, alpha), alpha);
  acc += std::pow(2.0, -static_cast<double>(J) * alpha) * std::pow(tail, alpha) / (1.0 - std::pow(2.0, -alpha));
  out.upper = std::pow(acc, 1.0 / alpha);
  const RISpaceSpec eff = convexify(spec, alpha);
  if (alpha == 1.0 && eff.family == Family::lp && eff.p == 1.0 && eff.convexify_power == 1.0)
    out.exact = k_functional_l1(space, f, t).value;
  return out;
}

std::vector<double> t_r_operator(const Space& space, std::span<const double> f, double r, double alpha) {
  check_function(space, f);
  check_alpha(alpha);
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const std::size_t n = space.size();
  std::vector<double> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t y = 0; y < n; ++y)
      if (space.distance(x, y) < r) {
        num += space.weight(y) * powabs(f[y], alpha);
        den += space.weight(y);
      }
    out[x] = root(num / den, alpha);
  }
  return out;
}

std::vector<std::vector<double>> t_r_operator(const Space& space, std::span<const double> f,
                                              std::span<const double> radii, double alpha) {
  check_function(space, f);
  check_alpha(alpha);
  for (double r : radii)
    if (!(r > 0.0)) throw DomainError("radius must be positive");
  const std::size_t n = space.size();
  std::vector<std::vector<double>> out(radii.size(), std::vector<double>(n));
  std::vector<std::size_t> order(n);
  std::vector<double> dist(n), num(n + 1), den(n + 1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) order[y] = y;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return space.distance(x, a) < space.distance(x, b); });
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t y = order[k];
      dist[k] = space.distance(x, y);
      num[k + 1] = num[k] + space.weight(y) * powabs(f[y], alpha);
      den[k + 1] = den[k] + space.weight(y);
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const auto c = static_cast<std::size_t>(std::lower_bound(dist.begin(), dist.end(), radii[i]) - dist.begin());
      out[i][x] = root(num[c] / den[c], alpha);
    }
  }
  return out;
}

}  // namespace besovmm
