#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "besovmm/corpus.hpp"
#include "besovmm/rispace.hpp"

namespace besovmm {

class Space;

/// Parameters shared by the embedding checks. X is `spec`; moduli use X^(alpha).
struct EmbeddingParams {
  RISpaceSpec spec = RISpaceSpec::lp(1.0);
  double alpha = 1.0;
  double s = 0.5;
  double q = 1.0;
};

/// (int_0^{min(1,mass)} (O(|f|^a,t)^{1/a} phi_{X^(a)}(t) / t^{s/Q})^q dt/t)^{1/q}; sup when q = inf.
double oscillation_functional(const Space& space, std::span<const double> f, const EmbeddingParams& params,
                              double Q);

struct EmbeddingRow {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct EmbeddingReport {
  std::string theorem;
  EmbeddingParams params;
  double upper_dimension = 0.0;
  double noncollapsing = 0.0;
  std::vector<EmbeddingRow> rows;
  double empirical_constant = 0.0;
};

/// lhs = oscillation functional, rhs = Besov seminorm + ||f||_{L^a + L^inf}.
EmbeddingReport embedding_report(const Space& space, const Corpus& corpus, const EmbeddingParams& params);

struct CollapsePoint {
  double epsilon = 1.0;
  double noncollapsing = 0.0;
  double constant = 0.0;
};

/// embedding_report constant on the weights scaled by each epsilon.
std::vector<CollapsePoint> collapse_sweep(const Space& space, const Corpus& corpus, const EmbeddingParams& params,
                                          std::span<const double> epsilons);

// Oscillation versus gradient ----------------------------------------------------

enum class GradientChoice { canonical, l1_optimal };

struct MO1Options {
  std::size_t grid_points = 256;
  GradientChoice gradient = GradientChoice::canonical;
};

struct MO1Result {
  double constant = 0.0;
  double growth_constant = 0.0;  // inf mu(B(x,r)) / r^Q over 0 < r <= 1
  double upper_dimension = 0.0;
  std::size_t grid_points = 0;
};

/// sup over a log grid in (0, mass/2) of O(|f|^a,t) / (t^{a/Q} (g^a)**(t)).
MO1Result teoMO1_check(const Space& space, std::span<const double> f, double alpha, const MO1Options& options = {});

double growth_constant(const Space& space, double Q);

// m-function and weights ------------------------------------------------------------

/// Integrand base of m: z^{s/Q} / phi_{X^(a)}(z) (reciprocal of the weight v).
PowerLog m_integrand(const RISpaceSpec& spec, double alpha, double s, double Q);

/// m(t) for t in [0,1) from the integrand base psi:
/// a < q < inf: int_t^1 psi^{aq/(q-a)} dz/z; q = inf: int_t^1 psi^a dz/z;
/// q <= a: sup_{[t,1)} psi. Returns +inf when divergent.
double m_function(const PowerLog& psi, double alpha, double q, double t);
double m_function(const RISpaceSpec& spec, double alpha, double s, double q, double Q, double t);

/// Finite m(0), decided symbolically.
bool m_zero_finite(const PowerLog& psi, double alpha, double q);

/// w(t) = (q/a - 1)^{1/q} (1+m(t))^{-1/a} psi(t)^{a/(q-a)}, a < q < inf, m(0) = inf.
double pesos_weight(const PowerLog& psi, double alpha, double q, double t);
double pesos_weight(const RISpaceSpec& spec, double alpha, double s, double q, double Q, double t);

// Targets ------------------------------------------------------------------------------

/// (int_0^1 (f* t^a (1+ln+ 1/t)^b (1+ln(1+ln+ 1/t))^c)^q dt/t)^{1/q}, sup when q = inf.
struct TargetNorm {
  double q = 1.0;
  double power = 0.0;
  double log_power = 0.0;
  double loglog_power = 0.0;

  double operator()(const StepDecreasing& fstar) const;
  std::string describe() const;
};

enum class RegimeCase { linf, lorentz_target, log_target, loglog_target };
std::string to_string(RegimeCase c);

struct Regime {
  RegimeCase case_id = RegimeCase::linf;
  double alpha_used = 1.0;
  std::optional<TargetNorm> target;  // empty for linf
  std::string item;                  // e.g. "critical-log"
  std::string target_description;
};

/// Target space of the Lorentz-Zygmund Besov space B^s_{L^{p,r}(log L)^beta, q}.
Regime regime_classify(double p, double r, double beta, double s, double q, double Q);

/// lhs = max|f|, rhs = oscillation functional + ||f||_{L^a+L^inf}. Requires m(0) < inf.
EmbeddingReport linf_embedding_check(const Space& space, const Corpus& corpus, const EmbeddingParams& params);

struct TargetParams {
  EmbeddingParams base;
  std::optional<TargetNorm> target;     // explicit target (regime output)
  std::optional<PowerLog> case3_weight;  // u for q <= alpha
  double case3_bound = 1e4;
  /// false: lhs uses f*, rhs = Besov seminorm + ||f||_{L^a+L^inf}.
  /// true: lhs uses ((|f|^a)**)^{1/a}, rhs = oscillation functional + ||f||_{L^a+L^inf}.
  bool oscillation_form = false;
};

/// lhs = target norm, rhs = Besov seminorm + ||f||_{L^a+L^inf}. Requires m(0) = inf
/// unless an explicit target is given.
EmbeddingReport target_norm_check(const Space& space, const Corpus& corpus, const TargetParams& params);

/// Lp form: lhs = oscillation functional with phi = t^{1/p} and a = min(1,p),
/// rhs = classical Besov seminorm (inner exponent p) + ||f||_{L^a+L^inf}.
EmbeddingReport lp_embedding_report(const Space& space, const Corpus& corpus, double p, double s, double q);

/// lhs = Besov seminorm of L^1, rhs = (int_0^inf (t^{-s} K(f,t))^q dt/t)^{1/q} with the exact
/// L^1 K-functional on a geometric t-grid of ratio `grid_ratio`, linear below the grid and
/// constant above it. Needs alpha = 1 and X^(alpha) = L^1.
EmbeddingReport interpolation_report(const Space& space, const Corpus& corpus, const EmbeddingParams& params,
                                     double grid_ratio = 1.189207115002721);

/// Verifies int_0^t u^q dz/z <= bound * v(t)^q on a log grid; throws PreconditionError naming t.
void check_case3_weight(const PowerLog& u, const PowerLog& psi, double q, double bound);

/// Default u for q <= alpha: v itself when v has positive power, else (1+ln)^{b-1/q}.
PowerLog default_case3_weight(const PowerLog& psi, double q);

}  // namespace besovmm
