#pragma once

#include <functional>

namespace besovmm {

using ScalarFn = std::function<double(double)>;

/// coef * t^power * (1 + ln+(1/t))^log_power * (1 + ln(1 + ln+(1/t)))^loglog_power
struct PowerLog {
  double coef = 1.0;
  double power = 0.0;
  double log_power = 0.0;
  double loglog_power = 0.0;

  double operator()(double t) const;
  bool pure_power() const noexcept { return log_power == 0.0 && loglog_power == 0.0; }
  PowerLog pow(double r) const;
  PowerLog times(const PowerLog& o) const;
  bool operator==(const PowerLog&) const = default;
};

namespace quad {

inline constexpr double kRelTol = 1e-12;

/// Adaptive 15-point Gauss-Kronrod on [a,b], a < b finite.
double integrate(const ScalarFn& f, double a, double b, double rel_tol = kRelTol);

/// integral_a^b f(t) dt/t, 0 <= a < b; a == 0 uses a double-exponential
/// rule in the log variable. Splits at t = 1 where ln+ has a kink.
double integrate_dt_over_t(const ScalarFn& f, double a, double b, double rel_tol = kRelTol);

/// integral_a^b w(t) dt/t, exact for pure powers.
double integrate_powerlog(const PowerLog& w, double a, double b);

/// sup of a continuous f over [a,b], 0 < a < b: log-spaced scan plus
/// golden-section refinement around the best sample.
double sup_on_interval(const ScalarFn& f, double a, double b);

/// sup of w over [a,b] (b may be +inf only when w is eventually monotone).
double sup_powerlog(const PowerLog& w, double a, double b);

}  // namespace quad
}  // namespace besovmm
