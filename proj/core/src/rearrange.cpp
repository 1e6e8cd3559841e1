#include "besovmm/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "besovmm/errors.hpp"
#include "besovmm/space.hpp"

namespace besovmm {

StepDecreasing::StepDecreasing(std::vector<double> breakpoints, std::vector<double> values) {
  if (breakpoints.size() != values.size()) throw ValidationError("breakpoints and values differ in length");
  double prev_t = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = breakpoints[i];
    const double v = values[i];
    if (!(t > prev_t)) throw ValidationError("breakpoints must be strictly increasing and positive");
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("values must be finite and nonnegative");
    if (!values_.empty() && v > values_.back()) throw ValidationError("values must be nonincreasing");
    if (!values_.empty() && v == values_.back()) {
      breaks_.back() = t;
    } else {
      breaks_.push_back(t);
      values_.push_back(v);
    }
    prev_t = t;
  }
  prefix_.resize(values_.size());
  double acc = 0.0;
  double left = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc += values_[i] * (breaks_[i] - left);
    prefix_[i] = acc;
    left = breaks_[i];
  }
}

std::size_t StepDecreasing::step_index(double t) const {
  return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin());
}

double StepDecreasing::operator()(double t) const {
  const std::size_t k = step_index(t);
  return k < values_.size() ? values_[k] : 0.0;
}

double StepDecreasing::integral(double t) const {
  if (t <= 0.0) return 0.0;
  const std::size_t k = step_index(t);
  if (k >= values_.size()) return prefix_.empty() ? 0.0 : prefix_.back();
  const double left = k == 0 ? 0.0 : breaks_[k - 1];
  const double before = k == 0 ? 0.0 : prefix_[k - 1];
  return before + values_[k] * (t - left);
}

StepDecreasing StepDecreasing::pow(double a) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(values_[i], a);
  return StepDecreasing(breaks_, std::move(v));
}

StepDecreasing StepDecreasing::scaled(double c) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(c) * values_[i];
  return StepDecreasing(breaks_, std::move(v));
}

StepDecreasing rearrangement(std::span<const double> weights, std::span<const double> f) {
  if (weights.size() != f.size()) throw ValidationError("function length does not match the space");
  const std::size_t n = f.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(f[i])) throw ValidationError("function value at " + std::to_string(i) + " is not finite");
    a[i] = std::abs(f[i]);
  }
  std::stable_sort(order.begin(), order.end(), [&a](std::size_t x, std::size_t y) { return a[x] > a[y]; });
  std::vector<double> breaks;
  std::vector<double> values;
  double t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    t += weights[i];
    if (!values.empty() && values.back() == a[i]) {
      breaks.back() = t;
    } else {
      breaks.push_back(t);
      values.push_back(a[i]);
    }
  }
  return StepDecreasing(std::move(breaks), std::move(values));
}

StepDecreasing rearrangement(const Space& space, std::span<const double> f) {
  return rearrangement(space.weights(), f);
}

double maximal_average(const StepDecreasing& fstar, double t) {
  if (!(t > 0.0)) throw DomainError("maximal average needs t > 0");
  return fstar.integral(t) / t;
}

OscillationProfile::OscillationProfile(const StepDecreasing& fstar, double alpha)
    : powered(fstar.pow(alpha)) {
  const auto b = powered.breakpoints();
  const auto v = powered.values();
  numerator.resize(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k == 0) {
      numerator[k] = 0.0;
    } else {
      // prefix integral at t_{k-1} minus v_k t_{k-1}
      const double c = powered.integral(b[k - 1]) - v[k] * b[k - 1];
      numerator[k] = std::max(0.0, c);
    }
  }
}

double OscillationProfile::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("oscillation needs t > 0");
  const std::size_t k = powered.step_index(t);
  if (k >= numerator.size()) return powered.integral(t) / t;
  return numerator[k] / t;
}

double oscillation(const StepDecreasing& fstar, double alpha, double t) {
  if (!(t > 0.0)) throw DomainError("oscillation needs t > 0");
  return OscillationProfile(fstar, alpha)(t);
}

double sum_plus_linf_norm(const StepDecreasing& fstar, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const double top = std::min(1.0, fstar.mass());
  if (top <= 0.0) return 0.0;
  return std::pow(fstar.pow(alpha).integral(top), 1.0 / alpha);
}

}  // namespace besovmm
