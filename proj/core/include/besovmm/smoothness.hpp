#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "besovmm/lp.hpp"
#include "besovmm/rispace.hpp"

namespace besovmm {

class Space;

/// (avg_{B(x,r)} |f(x)-f(y)|^a)^{1/a} at every x. Any a > 0 is accepted.
std::vector<double> nabla(const Space& space, std::span<const double> f, double r, double alpha);

/// E(f,r) = || nabla_r^alpha f ||_{X^(alpha)}.
double modulus(const Space& space, std::span<const double> f, double r, const RISpaceSpec& spec, double alpha);

/// Lp modulus with the inner average taken at exponent p:
/// (sum_x w_x avg_{B(x,r)} |f(x)-f(y)|^p)^{1/p}.
double modulus_classic(const Space& space, std::span<const double> f, double r, double p);

/// E(f,.) is constant on (d_k, d_{k+1}] between consecutive distance levels.
/// values[k] holds E on (levels[k], levels[k+1]], the last entry covers
/// (diameter, inf). E vanishes on (0, levels[0]].
struct LevelProfile {
  std::vector<double> levels;
  std::vector<double> values;

  double operator()(double r) const;
  double tail() const { return values.empty() ? 0.0 : values.back(); }
};

LevelProfile level_profile(const Space& space, std::span<const double> f, const RISpaceSpec& spec, double alpha);
LevelProfile level_profile_classic(const Space& space, std::span<const double> f, double p);

/// E(f, r_k) on r_k = r_min * ratio^k up to 2 * diameter.
struct ModulusProfile {
  std::vector<double> radii;
  std::vector<double> values;
  double tail_value = 0.0;
};

inline constexpr double kDefaultGridRatio = 1.189207115002721;  // 2^{1/4}

ModulusProfile modulus_profile(const Space& space, const LevelProfile& levels, double grid_ratio = kDefaultGridRatio);

/// (integral_0^inf (r^{-s} E(r))^q dr/r)^{1/q}; q = inf gives the sup.
/// Exact for the level profile (E is piecewise constant).
double besov_from_levels(const LevelProfile& profile, double s, double q);
/// Same integral treating E as constant on each grid cell (r_{k-1}, r_k].
double besov_from_grid(const ModulusProfile& profile, double s, double q);

struct BesovOptions {
  bool exact = true;                    // falls back to the grid above max_levels
  double grid_ratio = kDefaultGridRatio;
  std::size_t max_levels = 20000;
};

double besov_seminorm(const Space& space, std::span<const double> f, double s, double q, const RISpaceSpec& spec,
                      double alpha, const BesovOptions& options = {});

// Hajlasz gradients --------------------------------------------------------------

/// g >= 0 with |f(x)-f(y)| <= d(x,y) (g(x)+g(y)) on every pair; checked on construction.
class GradientField {
 public:
  static constexpr double kRelTol = 1e-12;
  GradientField(const Space& space, std::span<const double> f, std::vector<double> g);
  const std::vector<double>& values() const noexcept { return g_; }

 private:
  std::vector<double> g_;
};

/// Adds the per-point deficit so every pair constraint holds.
std::vector<double> repair_gradient(const Space& space, std::span<const double> f, std::vector<double> g);

/// g(x) = max_{y != x} |f(x)-f(y)| / d(x,y).
std::vector<double> canonical_gradient(const Space& space, std::span<const double> f);

/// Lowers each g(x) to the smallest feasible value given the others, sweeping until stable.
std::vector<double> coordinate_descent_gradient(const Space& space, std::span<const double> f, std::vector<double> g);

struct LpCertificate {
  double primal = 0.0;
  double dual = 0.0;
  double relative_gap = 0.0;
  int iterations = 0;
};

struct HajlaszL1 {
  double value = 0.0;
  std::vector<double> gradient;
  LpCertificate certificate;
};

inline constexpr double kLpGapTol = 1e-9;

/// min sum w g over Hajlasz gradients of f.
HajlaszL1 hajlasz_seminorm_l1(const Space& space, std::span<const double> f);

struct HajlaszUpper {
  double value = 0.0;
  std::string candidate;           // which gradient attained the minimum
  std::vector<double> gradient;
  std::optional<double> lower;     // certified lower bound when X^(alpha) = L^p, p >= 1
};

HajlaszUpper hajlasz_seminorm_upper(const Space& space, std::span<const double> f, const RISpaceSpec& spec,
                                    double alpha);

// K-functional ---------------------------------------------------------------------

struct KFunctional {
  double value = 0.0;
  std::vector<double> h;
  std::vector<double> gradient;
  LpCertificate certificate;
};

inline constexpr std::size_t kMaxKFunctionalPoints = 300;

/// K(f,t; L1, M^{1,1}) by one joint LP. With inhomogeneous = true the second
/// space carries ||h||_1 + ||g||_1.
KFunctional k_functional_l1(const Space& space, std::span<const double> f, double t, bool inhomogeneous = false);

struct KBounds {
  double t = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> exact;
};

KBounds k_bounds(const Space& space, std::span<const double> f, double t, const RISpaceSpec& spec, double alpha);

/// T_r f(x) = (avg_{B(x,r)} |f|^alpha)^{1/alpha}.
std::vector<double> t_r_operator(const Space& space, std::span<const double> f, double r, double alpha);
/// T_r f for every radius; one sort per point, then a binary search per radius.
std::vector<std::vector<double>> t_r_operator(const Space& space, std::span<const double> f,
                                              std::span<const double> radii, double alpha);

}  // namespace besovmm
