#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace besovmm {

class Space;

/// Nonincreasing step function on (0, mass): value v_i on [t_{i-1}, t_i),
/// t_0 = 0, strictly decreasing values, zero beyond the last breakpoint.
class StepDecreasing {
 public:
  StepDecreasing() = default;
  /// Values must be nonincreasing and nonnegative; ties are merged.
  StepDecreasing(std::vector<double> breakpoints, std::vector<double> values);

  std::span<const double> breakpoints() const noexcept { return breaks_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t steps() const noexcept { return values_.size(); }
  double mass() const noexcept { return breaks_.empty() ? 0.0 : breaks_.back(); }
  double sup() const noexcept { return values_.empty() ? 0.0 : values_.front(); }

  /// f*(t); right-continuous, 0 for t >= mass.
  double operator()(double t) const;
  /// Integral of f* over (0,t), any t >= 0.
  double integral(double t) const;
  /// Index of the step containing t, steps() if t >= mass.
  std::size_t step_index(double t) const;

  /// (f*)^a, a > 0.
  StepDecreasing pow(double a) const;
  StepDecreasing scaled(double c) const;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
  std::vector<double> prefix_;  // integral over (0, t_i)
};

/// Decreasing rearrangement of |f| w.r.t. the atom weights.
StepDecreasing rearrangement(const Space& space, std::span<const double> f);
StepDecreasing rearrangement(std::span<const double> weights, std::span<const double> f);

/// f**(t) = (1/t) * integral_0^t f*. Throws DomainError for t <= 0.
double maximal_average(const StepDecreasing& fstar, double t);

/// O(|f|^alpha, t) = ((f*)^alpha)**(t) - f*(t)^alpha.
double oscillation(const StepDecreasing& fstar, double alpha, double t);

/// Oscillation on a step of (f*)^alpha has the form c_k / t; this exposes c_k
/// for the step containing t (c = 0 on the first step).
struct OscillationProfile {
  StepDecreasing powered;       // (f*)^alpha
  std::vector<double> numerator;  // c_k per step

  OscillationProfile(const StepDecreasing& fstar, double alpha);
  double operator()(double t) const;
};

/// (integral_0^{min(1,mass)} (f*)^alpha)^{1/alpha}.
double sum_plus_linf_norm(const StepDecreasing& fstar, double alpha);

}  // namespace besovmm
