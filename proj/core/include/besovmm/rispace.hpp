#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "besovmm/quadrature.hpp"
#include "besovmm/rearrange.hpp"

namespace besovmm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Family { lp, lorentz, lorentz_zygmund, lambda_w, marcinkiewicz, marcinkiewicz_tilde, orlicz };

/// Young function presets: x^p, or x^p (1 + ln(1+x))^b.
struct OrliczFunction {
  enum class Kind { power, power_log };
  Kind kind = Kind::power;
  double p = 1.0;
  double b = 0.0;

  double operator()(double x) const;
  /// Smallest y with Phi(y) >= v (Phi is strictly increasing).
  double inverse(double v) const;
  bool operator==(const OrliczFunction&) const = default;
};

/// Rearrangement-invariant quasi-normed space, optionally r-convexified:
/// ||f||_{X^(r)} = || (f*)^r ||_X^{1/r}.
struct RISpaceSpec {
  Family family = Family::lp;
  double p = 1.0;     // Lp, Lorentz, Lorentz-Zygmund first index
  double q = 1.0;     // Lorentz second index, LZ second index, Lambda exponent (may be inf)
  double beta = 0.0;  // LZ log exponent
  PowerLog weight;    // Lambda weight w, or phi for the Marcinkiewicz families
  OrliczFunction young;
  double convexify_power = 1.0;

  static RISpaceSpec lp(double p);
  static RISpaceSpec lorentz(double p, double q);
  static RISpaceSpec lorentz_zygmund(double p, double r, double beta);
  static RISpaceSpec lambda_w(double q, PowerLog w);
  static RISpaceSpec marcinkiewicz(PowerLog phi);
  static RISpaceSpec marcinkiewicz_tilde(PowerLog phi);
  static RISpaceSpec orlicz(OrliczFunction phi);

  /// Throws ValidationError; runs the grid checks (Delta_2, monotonicity).
  void validate() const;
  std::string describe() const;
  bool operator==(const RISpaceSpec&) const = default;
};

RISpaceSpec convexify(const RISpaceSpec& spec, double r);

double quasi_norm(const RISpaceSpec& spec, const StepDecreasing& fstar);

/// phi_X(t) = ||chi_E||_X with mu(E) = t.
double fundamental_function(const RISpaceSpec& spec, double t);
/// phi_{X'}(t) = t / phi_X(t).
double dual_fundamental_function(const RISpaceSpec& spec, double t);

/// Closed-form power-log shape of phi_X (up to the constant for LZ), or
/// nullopt if the family has none.
std::optional<PowerLog> fundamental_shape(const RISpaceSpec& spec);

/// sup_t f**(t) phi_X(t).
double marcinkiewicz_envelope_norm(const RISpaceSpec& spec, const StepDecreasing& fstar);
/// integral f* d phi_X.
double lorentz_envelope_norm(const RISpaceSpec& spec, const StepDecreasing& fstar);

using FunctionTuple = std::vector<std::vector<double>>;

/// max over tuples of ||(sum |f_j|^a)^{1/a}|| / (sum ||f_j||^a)^{1/a}.
double alpha_convexity_defect(const RISpaceSpec& spec, double alpha, std::span<const FunctionTuple> tuples,
                              std::span<const double> weights);

/// Largest Phi(2x)/Phi(x) on a log grid; Delta_2 constant estimate.
double delta2_constant(const OrliczFunction& phi);

}  // namespace besovmm
