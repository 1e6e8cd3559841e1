#include "besovmm/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "besovmm/errors.hpp"

namespace besovmm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lnplus_inv(double t) { return t < 1.0 ? -std::log(t) : 0.0; }

}  // namespace

double PowerLog::operator()(double t) const {
  double v = coef * std::pow(t, power);
  if (log_power != 0.0 || loglog_power != 0.0) {
    const double l = lnplus_inv(t);
    if (log_power != 0.0) v *= std::pow(1.0 + l, log_power);
    if (loglog_power != 0.0) v *= std::pow(1.0 + std::log1p(l), loglog_power);
  }
  return v;
}

PowerLog PowerLog::pow(double r) const {
  return {std::pow(coef, r), power * r, log_power * r, loglog_power * r};
}

PowerLog PowerLog::times(const PowerLog& o) const {
  return {coef * o.coef, power + o.power, log_power + o.log_power, loglog_power + o.loglog_power};
}

namespace quad {

double integrate(const ScalarFn& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, rel_tol, &err);
  if (!std::isfinite(v)) throw EvaluationError("quadrature produced a non-finite value");
  return v;
}

double integrate_dt_over_t(const ScalarFn& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  if (a == 0.0) {
    // u = ln(1/t) on (0, min(b,1)], plus the finite remainder above 1
    const double top = std::min(b, 1.0);
    const double u0 = -std::log(top);
    boost::math::quadrature::exp_sinh<double> es;
    auto g = [&](double u) {
      const double t = std::exp(-(u0 + u));
      if (t <= 0.0) return 0.0;
      return f(t);
    };
    double err = 0.0;
    const double head = es.integrate(g, 0.0, kInf, rel_tol, &err);
    if (!std::isfinite(head)) throw EvaluationError("improper integral diverged");
    return head + (b > 1.0 ? integrate_dt_over_t(f, 1.0, b, rel_tol) : 0.0);
  }
  if (a < 1.0 && b > 1.0) return integrate_dt_over_t(f, a, 1.0, rel_tol) + integrate_dt_over_t(f, 1.0, b, rel_tol);
  auto g = [&](double s) { return f(std::exp(s)); };
  return integrate(g, std::log(a), std::log(b), rel_tol);
}

double integrate_powerlog(const PowerLog& w, double a, double b) {
  if (!(b > a)) return 0.0;
  if (w.pure_power() || a >= 1.0) {
    const double e = w.power;
    if (a == 0.0) return e > 0.0 ? w.coef * std::pow(b, e) / e : kInf;
    if (e == 0.0) return w.coef * std::log(b / a);
    return w.coef * (std::pow(b, e) - std::pow(a, e)) / e;
  }
  if (a == 0.0) {
    const double e = w.power;
    if (e < 0.0) return kInf;
    if (e == 0.0) {
      const bool conv = w.log_power < -1.0 || (w.log_power == -1.0 && w.loglog_power < -1.0);
      if (!conv) return kInf;
    }
  }
  if (b > 1.0) return integrate_powerlog(w, a, 1.0) + integrate_powerlog(w, 1.0, b);
  return integrate_dt_over_t([&w](double t) { return w(t); }, a, b);
}

double sup_on_interval(const ScalarFn& f, double a, double b) {
  if (!(b > a)) return f(a);
  constexpr int kSamples = 48;
  const double la = std::log(a);
  const double lb = std::log(b);
  const double h = (lb - la) / (kSamples - 1);
  double best = -kInf;
  int arg = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double t = i == 0 ? a : (i == kSamples - 1 ? b : std::exp(la + h * i));
    const double v = f(t);
    if (v > best) best = v, arg = i;
  }
  if (arg == 0 || arg == kSamples - 1) return best;
  // golden section on the bracketing cell pair
  double lo = la + h * (arg - 1);
  double hi = la + h * (arg + 1);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  for (int it = 0; it < 80 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
    if (f1 < f2) {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(std::exp(x2));
    } else {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(std::exp(x1));
    }
  }
  return std::max({best, f1, f2});
}

double sup_powerlog(const PowerLog& w, double a, double b) {
  if (std::isinf(b)) {
    double head = a < 1.0 ? sup_powerlog(w, a, 1.0) : w(a);
    const double from = std::max(a, 1.0);
    if (w.power > 0.0) return kInf;
    return std::max(head, w.power == 0.0 ? w.coef : w(from));
  }
  if (w.pure_power() || a >= 1.0) return std::max(w(a), w(b));
  if (a == 0.0) {
    // behaviour as t -> 0
    const double e = w.power;
    double limit = 0.0;
    if (e < 0.0 || (e == 0.0 && (w.log_power > 0.0 || (w.log_power == 0.0 && w.loglog_power > 0.0))))
      return kInf;
    if (e == 0.0 && w.log_power == 0.0 && w.loglog_power == 0.0) limit = w.coef;
    const double start = std::min(b, 1.0) * 1e-300;
    return std::max({limit, sup_on_interval([&w](double t) { return w(t); }, start, b)});
  }
  if (b > 1.0) return std::max(sup_powerlog(w, a, 1.0), sup_powerlog(w, 1.0, b));
  return sup_on_interval([&w](double t) { return w(t); }, a, b);
}

}  // namespace quad
}  // namespace besovmm
