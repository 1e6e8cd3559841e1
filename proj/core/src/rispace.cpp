#include "besovmm/rispace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "besovmm/errors.hpp"

namespace besovmm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  return g;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

bool positive(double v) { return v > 0.0 && !std::isnan(v); }

// ||f||_{L^{p,r}(log L)^beta}: (int (t^{1/p} (1+ln+ 1/t)^beta f*)^r dt/t)^{1/r}
double lz_norm(double p, double r, double beta, const StepDecreasing& f) {
  const auto br = f.breakpoints();
  const auto v = f.values();
  if (std::isinf(r)) {
    const PowerLog w{1.0, 1.0 / p, beta, 0.0};
    double best = 0.0;
    double left = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] > 0.0) best = std::max(best, v[k] * quad::sup_powerlog(w, left, br[k]));
      left = br[k];
    }
    return best;
  }
  const PowerLog w{1.0, r / p, beta * r, 0.0};
  double acc = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] > 0.0) acc += std::pow(v[k], r) * quad::integrate_powerlog(w, left, br[k]);
    left = br[k];
  }
  return std::pow(acc, 1.0 / r);
}

double lambda_norm(double q, const PowerLog& w, const StepDecreasing& f) {
  const PowerLog tw{w.coef, w.power + 1.0, w.log_power, w.loglog_power};
  const auto br = f.breakpoints();
  const auto v = f.values();
  double acc = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] > 0.0) acc += std::pow(v[k], q) * quad::integrate_powerlog(tw, left, br[k]);
    left = br[k];
  }
  return std::pow(acc, 1.0 / q);
}

double marcinkiewicz_norm(const PowerLog& phi, const StepDecreasing& f) {
  const auto br = f.breakpoints();
  const auto v = f.values();
  double best = 0.0;
  double left = 0.0;
  double before = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double s0 = before;
    const double vk = v[k];
    const double t0 = left;
    auto g = [&](double t) { return phi(t) * (s0 + vk * (t - t0)) / t; };
    if (k == 0) {
      best = std::max(best, vk * phi(br[0]));
    } else if (phi.pure_power()) {
      best = std::max({best, g(t0), g(br[k])});
    } else {
      best = std::max(best, quad::sup_on_interval(g, t0, br[k]));
    }
    before = f.integral(br[k]);
    left = br[k];
  }
  return best;
}

double tilde_norm(const PowerLog& phi, const StepDecreasing& f) {
  const auto br = f.breakpoints();
  const auto v = f.values();
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] > 0.0) best = std::max(best, v[k] * phi(br[k]));
  return best;
}

double orlicz_norm(const OrliczFunction& phi, const StepDecreasing& f) {
  const auto br = f.breakpoints();
  const auto v = f.values();
  if (f.sup() == 0.0) return 0.0;
  auto modular = [&](double lambda) {
    double acc = 0.0;
    double left = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] > 0.0) acc += (br[k] - left) * phi(v[k] / lambda);
      left = br[k];
    }
    return acc;
  };
  double hi = f.sup();
  double lo = f.sup();
  int guard = 0;
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2000) throw EvaluationError("Orlicz norm: no upper bracket");
  }
  guard = 0;
  while (modular(lo) <= 1.0) {
    lo *= 0.5;
    if (++guard > 2000) throw EvaluationError("Orlicz norm: no lower bracket");
  }
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 1e-10 * hi * 0.5) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (modular(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  throw EvaluationError("Orlicz norm bisection did not converge");
}

double base_norm(const RISpaceSpec& s, const StepDecreasing& f) {
  switch (s.family) {
    case Family::lp: {
      const StepDecreasing g = f.pow(s.p);
      return std::pow(g.integral(g.mass()), 1.0 / s.p);
    }
    case Family::lorentz:
      return lz_norm(s.p, s.q, 0.0, f);
    case Family::lorentz_zygmund:
      return lz_norm(s.p, s.q, s.beta, f);
    case Family::lambda_w:
      return lambda_norm(s.q, s.weight, f);
    case Family::marcinkiewicz:
      return marcinkiewicz_norm(s.weight, f);
    case Family::marcinkiewicz_tilde:
      return tilde_norm(s.weight, f);
    case Family::orlicz:
      return orlicz_norm(s.young, f);
  }
  throw ValidationError("unknown family");
}

std::string fmt_num(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string fmt_powerlog(const PowerLog& w) {
  std::ostringstream os;
  os << "t^" << w.power;
  if (w.log_power != 0.0) os << "(1+ln+1/t)^" << w.log_power;
  if (w.loglog_power != 0.0) os << "(1+ln(1+ln+1/t))^" << w.loglog_power;
  if (w.coef != 1.0) os << "*" << w.coef;
  return os.str();
}

}  // namespace

// Orlicz presets -------------------------------------------------------------

double OrliczFunction::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  double v = std::pow(x, p);
  if (kind == Kind::power_log) v *= std::pow(1.0 + std::log1p(x), b);
  return v;
}

double OrliczFunction::inverse(double v) const {
  if (v <= 0.0) return 0.0;
  if (kind == Kind::power) return std::pow(v, 1.0 / p);
  double lo = 0.0;
  double hi = 1.0;
  while ((*this)(hi) < v) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < v)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

double delta2_constant(const OrliczFunction& phi) {
  double c = 0.0;
  for (double x : log_grid(1e-8, 1e8, 161)) c = std::max(c, phi(2.0 * x) / phi(x));
  return c;
}

// Spec -------------------------------------------------------------------------

RISpaceSpec RISpaceSpec::lp(double p) {
  RISpaceSpec s;
  s.family = Family::lp;
  s.p = p;
  s.validate();
  return s;
}

RISpaceSpec RISpaceSpec::lorentz(double p, double q) {
  RISpaceSpec s;
  s.family = Family::lorentz;
  s.p = p;
  s.q = q;
  s.validate();
  return s;
}

RISpaceSpec RISpaceSpec::lorentz_zygmund(double p, double r, double beta) {
  RISpaceSpec s;
  s.family = Family::lorentz_zygmund;
  s.p = p;
  s.q = r;
  s.beta = beta;
  s.validate();
  return s;
}

RISpaceSpec RISpaceSpec::lambda_w(double q, PowerLog w) {
  RISpaceSpec s;
  s.family = Family::lambda_w;
  s.q = q;
  s.weight = w;
  s.validate();
  return s;
}

RISpaceSpec RISpaceSpec::marcinkiewicz(PowerLog phi) {
  RISpaceSpec s;
  s.family = Family::marcinkiewicz;
  s.weight = phi;
  s.validate();
  return s;
}

RISpaceSpec RISpaceSpec::marcinkiewicz_tilde(PowerLog phi) {
  RISpaceSpec s;
  s.family = Family::marcinkiewicz_tilde;
  s.weight = phi;
  s.validate();
  return s;
}

RISpaceSpec RISpaceSpec::orlicz(OrliczFunction phi) {
  RISpaceSpec s;
  s.family = Family::orlicz;
  s.young = phi;
  s.validate();
  return s;
}

void RISpaceSpec::validate() const {
  require(positive(convexify_power) && std::isfinite(convexify_power), "convexify power must be positive");
  switch (family) {
    case Family::lp:
      require(positive(p) && std::isfinite(p), "Lp needs 0 < p < inf");
      break;
    case Family::lorentz:
      require(positive(p) && std::isfinite(p), "Lorentz needs 0 < p < inf");
      require(positive(q), "Lorentz needs q > 0");
      break;
    case Family::lorentz_zygmund:
      require(positive(p) && std::isfinite(p), "Lorentz-Zygmund needs 0 < p < inf");
      require(positive(q), "Lorentz-Zygmund needs r > 0");
      require(std::isfinite(beta), "Lorentz-Zygmund needs finite beta");
      break;
    case Family::lambda_w: {
      require(positive(q) && std::isfinite(q), "Lambda needs 0 < q < inf");
      require(positive(weight.coef), "Lambda weight needs a positive coefficient");
      require(weight.power > -1.0, "Lambda weight must be integrable at 0 (power > -1)");
      const PowerLog tw{weight.coef, weight.power + 1.0, weight.log_power, weight.loglog_power};
      double c = 0.0;
      for (double t : log_grid(1e-6, 1e6, 49)) {
        const double w1 = quad::integrate_powerlog(tw, 0.0, t);
        const double w2 = quad::integrate_powerlog(tw, 0.0, 2.0 * t);
        require(std::isfinite(w1) && w1 > 0.0, "Lambda weight is not locally integrable");
        c = std::max(c, w2 / w1);
      }
      require(c < 1e6, "Lambda weight fails the Delta_2 condition on the check grid");
      break;
    }
    case Family::marcinkiewicz:
    case Family::marcinkiewicz_tilde: {
      require(positive(weight.coef), "phi needs a positive coefficient");
      require(weight.power > 0.0, "phi must vanish at 0 (power > 0)");
      const auto g = log_grid(1e-10, 1e10, 201);
      for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double a = weight(g[i]);
        const double b = weight(g[i + 1]);
        require(b >= a * (1.0 - 1e-12), "phi must be nondecreasing");
        if (family == Family::marcinkiewicz)
          require(b / g[i + 1] <= a / g[i] * (1.0 + 1e-12), "phi(t)/t must be nonincreasing");
      }
      break;
    }
    case Family::orlicz: {
      require(positive(young.p) && std::isfinite(young.p), "Young function needs p > 0");
      const auto g = log_grid(1e-8, 1e8, 161);
      for (std::size_t i = 0; i + 1 < g.size(); ++i)
        require(young(g[i + 1]) > young(g[i]), "Young function must be strictly increasing");
      const double c = delta2_constant(young);
      require(std::isfinite(c) && c < 1e6, "Young function fails the Delta_2 condition");
      break;
    }
  }
}

std::string RISpaceSpec::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::lp:
      os << "L^" << fmt_num(p);
      break;
    case Family::lorentz:
      os << "L^{" << fmt_num(p) << "," << fmt_num(q) << "}";
      break;
    case Family::lorentz_zygmund:
      os << "L^{" << fmt_num(p) << "," << fmt_num(q) << "}(log L)^" << fmt_num(beta);
      break;
    case Family::lambda_w:
      os << "Lambda^" << fmt_num(q) << "[" << fmt_powerlog(weight) << "]";
      break;
    case Family::marcinkiewicz:
      os << "M[" << fmt_powerlog(weight) << "]";
      break;
    case Family::marcinkiewicz_tilde:
      os << "Mtilde[" << fmt_powerlog(weight) << "]";
      break;
    case Family::orlicz:
      os << "Orlicz[x^" << fmt_num(young.p);
      if (young.kind == OrliczFunction::Kind::power_log) os << "(1+ln(1+x))^" << fmt_num(young.b);
      os << "]";
      break;
  }
  if (convexify_power != 1.0) os << "^(" << fmt_num(convexify_power) << ")";
  return os.str();
}

RISpaceSpec convexify(const RISpaceSpec& spec, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("convexification power must be positive");
  RISpaceSpec out = spec;
  const double rho = spec.convexify_power * r;
  out.convexify_power = rho;
  switch (spec.family) {
    case Family::lp:
      out.p = spec.p * rho;
      out.convexify_power = 1.0;
      break;
    case Family::lorentz:
      out.p = spec.p * rho;
      out.q = spec.q * rho;
      out.convexify_power = 1.0;
      break;
    case Family::lorentz_zygmund:
      out.p = spec.p * rho;
      out.q = spec.q * rho;
      out.beta = spec.beta / rho;
      out.convexify_power = 1.0;
      break;
    case Family::marcinkiewicz_tilde:
      out.weight = spec.weight.pow(1.0 / rho);
      out.convexify_power = 1.0;
      break;
    default:
      break;
  }
  return out;
}

double quasi_norm(const RISpaceSpec& spec, const StepDecreasing& fstar) {
  if (fstar.sup() == 0.0) return 0.0;
  const double rho = spec.convexify_power;
  if (rho == 1.0) return base_norm(spec, fstar);
  return std::pow(base_norm(spec, fstar.pow(rho)), 1.0 / rho);
}

double fundamental_function(const RISpaceSpec& spec, double t) {
  if (!(t > 0.0)) throw DomainError("fundamental function needs t > 0");
  const double rho = spec.convexify_power;
  double base = 0.0;
  switch (spec.family) {
    case Family::lp:
      base = std::pow(t, 1.0 / spec.p);
      break;
    case Family::lorentz:
      base = std::isinf(spec.q) ? std::pow(t, 1.0 / spec.p)
                                : std::pow(spec.p / spec.q, 1.0 / spec.q) * std::pow(t, 1.0 / spec.p);
      break;
    case Family::marcinkiewicz:
    case Family::marcinkiewicz_tilde:
      base = spec.weight(t);
      break;
    case Family::orlicz:
      base = 1.0 / spec.young.inverse(1.0 / t);
      break;
    default: {
      RISpaceSpec unit = spec;
      unit.convexify_power = 1.0;
      base = base_norm(unit, StepDecreasing({t}, {1.0}));
      break;
    }
  }
  return rho == 1.0 ? base : std::pow(base, 1.0 / rho);
}

double dual_fundamental_function(const RISpaceSpec& spec, double t) {
  return t / fundamental_function(spec, t);
}

std::optional<PowerLog> fundamental_shape(const RISpaceSpec& spec) {
  std::optional<PowerLog> base;
  switch (spec.family) {
    case Family::lp:
      base = PowerLog{1.0, 1.0 / spec.p, 0.0, 0.0};
      break;
    case Family::lorentz:
      base = PowerLog{std::isinf(spec.q) ? 1.0 : std::pow(spec.p / spec.q, 1.0 / spec.q), 1.0 / spec.p, 0.0, 0.0};
      break;
    case Family::lorentz_zygmund:
      base = PowerLog{1.0, 1.0 / spec.p, spec.beta, 0.0};
      break;
    case Family::lambda_w:
      if (spec.weight.pure_power()) {
        const double a = spec.weight.power + 1.0;
        base = PowerLog{std::pow(spec.weight.coef / a, 1.0 / spec.q), a / spec.q, 0.0, 0.0};
      }
      break;
    case Family::marcinkiewicz:
    case Family::marcinkiewicz_tilde:
      base = spec.weight;
      break;
    case Family::orlicz:
      if (spec.young.kind == OrliczFunction::Kind::power) base = PowerLog{1.0, 1.0 / spec.young.p, 0.0, 0.0};
      break;
  }
  if (base && spec.convexify_power != 1.0) base = base->pow(1.0 / spec.convexify_power);
  return base;
}

double marcinkiewicz_envelope_norm(const RISpaceSpec& spec, const StepDecreasing& fstar) {
  const auto br = fstar.breakpoints();
  const auto v = fstar.values();
  double best = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto g = [&](double t) { return fstar.integral(t) / t * fundamental_function(spec, t); };
    if (k == 0)
      best = std::max(best, v[0] * fundamental_function(spec, br[0]));
    else
      best = std::max(best, quad::sup_on_interval(g, left, br[k]));
    left = br[k];
  }
  return best;
}

double lorentz_envelope_norm(const RISpaceSpec& spec, const StepDecreasing& fstar) {
  const auto br = fstar.breakpoints();
  const auto v = fstar.values();
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double cur = fundamental_function(spec, br[k]);
    acc += v[k] * (cur - prev);
    prev = cur;
  }
  return acc;
}

double alpha_convexity_defect(const RISpaceSpec& spec, double alpha, std::span<const FunctionTuple> tuples,
                              std::span<const double> weights) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  double worst = 0.0;
  bool any = false;
  for (const FunctionTuple& tuple : tuples) {
    std::vector<const std::vector<double>*> live;
    double den = 0.0;
    for (const auto& f : tuple) {
      const double nf = quasi_norm(spec, rearrangement(weights, f));
      if (nf > 0.0) {
        live.push_back(&f);
        den += std::pow(nf, alpha);
      }
    }
    if (live.empty()) continue;
    any = true;
    if (live.size() == 1) {
      worst = std::max(worst, 1.0);
      continue;
    }
    std::vector<double> h(weights.size(), 0.0);
    for (const auto* f : live)
      for (std::size_t i = 0; i < h.size(); ++i) h[i] += std::pow(std::abs((*f)[i]), alpha);
    for (double& x : h) x = std::pow(x, 1.0 / alpha);
    const double num = quasi_norm(spec, rearrangement(weights, h));
    worst = std::max(worst, num / std::pow(den, 1.0 / alpha));
  }
  return any ? worst : 1.0;
}

}  // namespace besovmm
