#include "besovmm/embed.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "besovmm/errors.hpp"
#include "besovmm/rearrange.hpp"
#include "besovmm/smoothness.hpp"
#include "besovmm/space.hpp"

namespace besovmm {

namespace {

constexpr double kSnap = 1e-12;

double snap(double v, double target, double scale = 1.0) {
  return std::abs(v - target) <= kSnap * std::max(1.0, std::abs(scale)) ? target : v;
}

void check_params(const EmbeddingParams& p) {
  p.spec.validate();
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw DomainError("alpha must be positive");
  if (!(p.s > 0.0) || !std::isfinite(p.s)) throw DomainError("s must be positive");
  if (!(p.q > 0.0)) throw DomainError("q must be positive");
}

// phi_{X^(a)} as an exact power-log, when the family has one.
std::optional<PowerLog> exact_shape(const RISpaceSpec& eff) {
  if (eff.family == Family::lorentz_zygmund) return std::nullopt;
  return fundamental_shape(eff);
}

double positive_Q(const Space& space) {
  const double Q = upper_dimension(space);
  if (!(Q > 0.0)) throw PreconditionError("upper dimension Q is zero (one-point space)");
  return Q;
}

double weighted_norm(const StepDecreasing& fstar, const PowerLog& w, double q) {
  const double top = std::min(1.0, fstar.mass());
  const auto br = fstar.breakpoints();
  const auto v = fstar.values();
  double acc = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < v.size() && left < top; ++k) {
    const double hi = std::min(br[k], top);
    if (v[k] > 0.0) {
      if (std::isinf(q))
        acc = std::max(acc, v[k] * quad::sup_powerlog(w, left, hi));
      else
        acc += std::pow(v[k], q) * quad::integrate_powerlog(w.pow(q), left, hi);
    }
    left = br[k];
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

void fill_constant(EmbeddingReport& rep) {
  rep.empirical_constant = 0.0;
  for (auto& row : rep.rows) {
    if (row.rhs == 0.0) {
      if (row.lhs > 0.0)
        throw InconsistencyError("right-hand side vanishes while the left-hand side is positive for '" + row.label +
                                 "'");
      row.ratio = 0.0;
    } else {
      row.ratio = row.lhs / row.rhs;
    }
    rep.empirical_constant = std::max(rep.empirical_constant, row.ratio);
  }
}

double rhs_besov(const Space& space, const std::vector<double>& f, const EmbeddingParams& p) {
  return besov_seminorm(space, f, p.s, p.q, p.spec, p.alpha) +
         sum_plus_linf_norm(rearrangement(space, f), p.alpha);
}

}  // namespace

double oscillation_functional(const Space& space, std::span<const double> f, const EmbeddingParams& params,
                              double Q) {
  check_params(params);
  if (!(Q > 0.0)) throw DomainError("Q must be positive");
  const StepDecreasing fstar = rearrangement(space, f);
  const OscillationProfile osc(fstar, params.alpha);
  const RISpaceSpec eff = convexify(params.spec, params.alpha);
  const auto shape = exact_shape(eff);
  const double a = params.alpha;
  const double q = params.q;
  const double sQ = params.s / Q;
  const double top = std::min(1.0, fstar.mass());
  const auto br = osc.powered.breakpoints();

  double acc = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < br.size() && left < top; ++k) {
    const double hi = std::min(br[k], top);
    const double ck = osc.numerator[k];
    if (ck > 0.0) {
      if (shape) {
        const PowerLog F = shape->times({std::pow(ck, 1.0 / a), -1.0 / a - sQ, 0.0, 0.0});
        if (std::isinf(q))
          acc = std::max(acc, quad::sup_powerlog(F, left, hi));
        else
          acc += quad::integrate_powerlog(F.pow(q), left, hi);
      } else {
        auto F = [&](double t) { return std::pow(ck / t, 1.0 / a) * fundamental_function(eff, t) * std::pow(t, -sQ); };
        if (std::isinf(q))
          acc = std::max(acc, quad::sup_on_interval(F, left, hi));
        else
          acc += quad::integrate_dt_over_t([&](double t) { return std::pow(F(t), q); }, left, hi, 1e-10);
      }
    }
    left = br[k];
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

EmbeddingReport embedding_report(const Space& space, const Corpus& corpus, const EmbeddingParams& params) {
  check_params(params);
  EmbeddingReport rep;
  rep.theorem = "oscillation";
  rep.params = params;
  rep.upper_dimension = positive_Q(space);
  rep.noncollapsing = noncollapsing_constant(space);
  for (const auto& fn : corpus) {
    EmbeddingRow row;
    row.label = fn.label;
    row.lhs = oscillation_functional(space, fn.values, params, rep.upper_dimension);
    row.rhs = rhs_besov(space, fn.values, params);
    rep.rows.push_back(row);
  }
  fill_constant(rep);
  return rep;
}

std::vector<CollapsePoint> collapse_sweep(const Space& space, const Corpus& corpus, const EmbeddingParams& params,
                                          std::span<const double> epsilons) {
  std::vector<CollapsePoint> out;
  for (double eps : epsilons) {
    const Space scaled = space.with_scaled_weights(eps);
    const EmbeddingReport rep = embedding_report(scaled, corpus, params);
    out.push_back({eps, rep.noncollapsing, rep.empirical_constant});
  }
  return out;
}

// ------------------------------------------------------------------------------------

double growth_constant(const Space& space, double Q) {
  double c = kInfinity;
  for (std::size_t x = 0; x < space.size(); ++x) {
    c = std::min(c, space.ball_measure(x, 1.0));
    for (std::size_t y = 0; y < space.size(); ++y) {
      const double r = space.distance(x, y);
      if (r > 0.0 && r <= 1.0) c = std::min(c, space.ball_measure(x, r) / std::pow(r, Q));
    }
  }
  return c;
}

MO1Result teoMO1_check(const Space& space, std::span<const double> f, double alpha, const MO1Options& options) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (options.grid_points < 2) throw DomainError("grid needs at least two points");
  MO1Result out;
  out.upper_dimension = positive_Q(space);
  out.growth_constant = growth_constant(space, out.upper_dimension);
  out.grid_points = options.grid_points;
  double fmax = 0.0;
  for (double v : f) fmax = std::max(fmax, std::abs(v));
  if (f.size() != space.size()) throw ValidationError("function length does not match the space");
  if (fmax == 0.0) return out;
  std::vector<double> u(f.begin(), f.end());
  for (double& v : u) v /= fmax;
  if (std::all_of(u.begin(), u.end(), [&](double v) { return v == u[0]; })) return out;

  std::vector<double> g = options.gradient == GradientChoice::canonical ? canonical_gradient(space, u)
                                                                        : hajlasz_seminorm_l1(space, u).gradient;
  const OscillationProfile osc(rearrangement(space, u), alpha);
  const StepDecreasing gpow = rearrangement(space, g).pow(alpha);

  double wmin = kInfinity;
  for (double w : space.weights()) wmin = std::min(wmin, w);
  const double lo = 0.5 * wmin;
  const double hi = 0.5 * space.total_mass() * (1.0 - 1e-12);
  if (!(hi > lo)) return out;
  const double la = std::log(lo);
  const double lb = std::log(hi);
  const double QQ = out.upper_dimension;
  for (std::size_t i = 0; i < options.grid_points; ++i) {
    const double t = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(options.grid_points - 1));
    const double o = osc(t);
    if (o <= 0.0) continue;
    const double den = std::pow(t, alpha / QQ) * gpow.integral(t) / t;
    if (den <= 0.0) continue;
    out.constant = std::max(out.constant, o / den);
  }
  return out;
}

// m-function ------------------------------------------------------------------------

PowerLog m_integrand(const RISpaceSpec& spec, double alpha, double s, double Q) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(Q > 0.0)) throw DomainError("Q must be positive");
  const RISpaceSpec eff = convexify(spec, alpha);
  const auto shape = fundamental_shape(eff);
  if (!shape) throw UnsupportedError("m-function needs a closed-form power-log fundamental function; " +
                                     eff.describe() + " has none");
  const double sQ = s / Q;
  PowerLog psi{1.0 / shape->coef, sQ - shape->power, -shape->log_power, -shape->loglog_power};
  psi.power = snap(psi.power, 0.0, std::max(sQ, shape->power));
  return psi;
}

namespace {

// psi^kappa with exponents snapped onto the critical values
PowerLog powered_integrand(const PowerLog& psi, double kappa) {
  PowerLog w = psi.pow(kappa);
  w.power = snap(w.power, 0.0, kappa);
  w.log_power = snap(w.log_power, -1.0, kappa);
  w.loglog_power = snap(w.loglog_power, -1.0, kappa);
  if (w.log_power == 0.0 || std::abs(w.log_power) <= kSnap) w.log_power = snap(w.log_power, 0.0);
  return w;
}

bool sup_case(double alpha, double q) { return !std::isinf(q) && q <= alpha; }

double kappa_of(double alpha, double q) { return std::isinf(q) ? alpha : alpha * q / (q - alpha); }

}  // namespace

bool m_zero_finite(const PowerLog& psi, double alpha, double q) {
  if (sup_case(alpha, q)) {
    if (psi.power != 0.0) return psi.power > 0.0;
    if (psi.log_power != 0.0) return psi.log_power < 0.0;
    return psi.loglog_power <= 0.0;
  }
  const PowerLog w = powered_integrand(psi, kappa_of(alpha, q));
  if (w.power != 0.0) return w.power > 0.0;
  if (w.log_power != -1.0) return w.log_power < -1.0;
  return w.loglog_power < -1.0;
}

double m_function(const PowerLog& psi, double alpha, double q, double t) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(q > 0.0)) throw DomainError("q must be positive");
  if (!(t >= 0.0) || t > 1.0) throw DomainError("m-function needs 0 <= t <= 1");
  if (t == 0.0 && !m_zero_finite(psi, alpha, q)) return kInfinity;
  if (t == 1.0) return sup_case(alpha, q) ? psi(1.0) : 0.0;
  if (sup_case(alpha, q)) return quad::sup_powerlog(psi, t, 1.0);
  return quad::integrate_powerlog(powered_integrand(psi, kappa_of(alpha, q)), t, 1.0);
}

double m_function(const RISpaceSpec& spec, double alpha, double s, double q, double Q, double t) {
  return m_function(m_integrand(spec, alpha, s, Q), alpha, q, t);
}

double pesos_weight(const PowerLog& psi, double alpha, double q, double t) {
  if (!(alpha < q) || std::isinf(q)) throw DomainError("weight w needs alpha < q < inf");
  if (m_zero_finite(psi, alpha, q)) throw PreconditionError("weight w needs m(0) = inf");
  if (!(t > 0.0) || !(t < 1.0)) throw DomainError("weight w needs 0 < t < 1");
  const double m = m_function(psi, alpha, q, t);
  return std::pow(q / alpha - 1.0, 1.0 / q) * std::pow(1.0 + m, -1.0 / alpha) *
         std::pow(psi(t), alpha / (q - alpha));
}

double pesos_weight(const RISpaceSpec& spec, double alpha, double s, double q, double Q, double t) {
  return pesos_weight(m_integrand(spec, alpha, s, Q), alpha, q, t);
}

// Targets -----------------------------------------------------------------------------

double TargetNorm::operator()(const StepDecreasing& fstar) const {
  return weighted_norm(fstar, PowerLog{1.0, power, log_power, loglog_power}, q);
}

std::string TargetNorm::describe() const {
  std::ostringstream os;
  os << (std::isinf(q) ? "sup" : "L^q(dt/t)") << " of f* t^" << power;
  if (log_power != 0.0) os << " (1+ln 1/t)^" << log_power;
  if (loglog_power != 0.0) os << " (1+ln(1+ln 1/t))^" << loglog_power;
  if (!std::isinf(q)) os << ", q=" << q;
  return os.str();
}

std::string to_string(RegimeCase c) {
  switch (c) {
    case RegimeCase::linf:
      return "Linf";
    case RegimeCase::lorentz_target:
      return "lorentz_target";
    case RegimeCase::log_target:
      return "log_target";
    case RegimeCase::loglog_target:
      return "loglog_target";
  }
  return "unknown";
}

Regime regime_classify(double p, double r, double beta, double s, double q, double Q) {
  if (!(p > 0.0) || std::isinf(p)) throw DomainError("p must be positive and finite");
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (!(q > 0.0)) throw DomainError("q must be positive");
  if (!(s > 0.0) || !(Q > 0.0)) throw DomainError("s and Q must be positive");
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");

  const double m1r = std::min(1.0, r);
  const bool below_p = (p <= 1.0 && p < r) || (p == r && p <= 1.0 && beta < 0.0);
  const double crit = Q / p;
  const double sc = snap(s, crit, crit);
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;

  Regime out;
  auto set_target = [&](RegimeCase c, const char* item, double a, double b, double cc) {
    out.case_id = c;
    out.item = item;
    out.target = TargetNorm{q, a, b, cc};
    out.target_description = out.target->describe();
  };
  auto set_linf = [&](const char* item) {
    out.case_id = RegimeCase::linf;
    out.item = item;
    out.target.reset();
    out.target_description = "L^inf";
  };
  const double default_below = 0.9 * p;

  if (sc > crit) {
    out.alpha_used = below_p ? default_below : m1r;
    set_linf("supercritical");
    return out;
  }
  if (sc < crit) {
    out.alpha_used = below_p ? default_below : m1r;
    set_target(RegimeCase::lorentz_target, "subcritical", 1.0 / p - s / Q, beta, 0.0);
    return out;
  }
  if (!below_p) {
    const double a = m1r;
    out.alpha_used = a;
    if (!std::isinf(q) && q <= a) {
      if (beta >= 0.0)
        set_linf("critical-bounded");
      else
        set_target(RegimeCase::log_target, "critical-log-small-q", 0.0, beta - inv_q, 0.0);
      return out;
    }
    const double thr = snap(beta, 1.0 / a - inv_q, 1.0 / a);
    const double b = thr;
    if (b > 1.0 / a - inv_q) {
      set_linf("critical-bounded");
    } else if (b == 1.0 / a - inv_q) {
      if (std::isinf(q))
        set_target(RegimeCase::loglog_target, "critical-loglog", 0.0, 0.0, -beta);
      else
        set_target(RegimeCase::loglog_target, "critical-loglog", 0.0, -inv_q, -1.0 / a);
    } else {
      set_target(RegimeCase::log_target, "critical-log", 0.0, -(1.0 / a - beta), 0.0);
    }
    return out;
  }
  // alpha < p
  if (!std::isinf(q) && q < p) {
    if (beta >= 0.0) {
      out.alpha_used = 0.5 * (q + p);
      set_linf("critical-bounded");
    } else {
      out.alpha_used = default_below;
      set_target(RegimeCase::log_target, "critical-log-below-p-small-q", 0.0, beta - inv_q, 0.0);
    }
    return out;
  }
  const double thr = 1.0 / p - inv_q;
  if (snap(beta, thr, 1.0 / p) > thr) {
    // any alpha with 1/p < 1/alpha < beta + 1/q
    out.alpha_used = 2.0 / (1.0 / p + beta + inv_q);
    set_linf("critical-bounded");
  } else {
    out.alpha_used = default_below;
    set_target(RegimeCase::log_target, "critical-log-below-p", 0.0, -(1.0 / out.alpha_used - beta), 0.0);
  }
  return out;
}

EmbeddingReport linf_embedding_check(const Space& space, const Corpus& corpus, const EmbeddingParams& params) {
  check_params(params);
  EmbeddingReport rep;
  rep.theorem = "linf";
  rep.params = params;
  rep.upper_dimension = positive_Q(space);
  rep.noncollapsing = noncollapsing_constant(space);
  const PowerLog psi = m_integrand(params.spec, params.alpha, params.s, rep.upper_dimension);
  if (!m_zero_finite(psi, params.alpha, params.q))
    throw PreconditionError("m(0) is infinite for " + params.spec.describe() +
                            ": the L-infinity embedding does not apply");
  for (const auto& fn : corpus) {
    EmbeddingRow row;
    row.label = fn.label;
    for (double v : fn.values) row.lhs = std::max(row.lhs, std::abs(v));
    row.rhs = oscillation_functional(space, fn.values, params, rep.upper_dimension) +
              sum_plus_linf_norm(rearrangement(space, fn.values), params.alpha);
    rep.rows.push_back(row);
  }
  fill_constant(rep);
  return rep;
}

PowerLog default_case3_weight(const PowerLog& psi, double q) {
  const PowerLog v{1.0 / psi.coef, -psi.power, -psi.log_power, -psi.loglog_power};
  if (v.power > 0.0) return v;
  return {v.coef, 0.0, v.log_power - 1.0 / q, v.loglog_power};
}

void check_case3_weight(const PowerLog& u, const PowerLog& psi, double q, double bound) {
  const PowerLog v{1.0 / psi.coef, -psi.power, -psi.log_power, -psi.loglog_power};
  for (int i = 0; i <= 60; ++i) {
    const double t = std::pow(10.0, -12.0 + 12.0 * i / 60.0);
    const double I = quad::integrate_powerlog(u.pow(q), 0.0, t);
    const double ratio = I / std::pow(v(t), q);
    if (!std::isfinite(I) || !(ratio <= bound)) {
      std::ostringstream os;
      os << "weight u fails int_0^t u^q dz/z <= C v(t)^q at t=" << t;
      throw PreconditionError(os.str());
    }
  }
}

namespace {

// ((|f|^a)**(t))^{1/a} on one step of (f*)^a, t in [t_{k-1}, t_k]
struct DoubleStar {
  const StepDecreasing& powered;
  double alpha;
  double operator()(double t) const { return std::pow(powered.integral(t) / t, 1.0 / alpha); }
};

// (int_0^{min(1,mass)} (F(t) W(t))^q dt/t)^{1/q}, F = ((|f|^a)**)^{1/a}; sup for q = inf
double double_star_norm(const StepDecreasing& fstar, double alpha, double q, const ScalarFn& W) {
  const StepDecreasing powered = fstar.pow(alpha);
  const DoubleStar F{powered, alpha};
  const double top = std::min(1.0, fstar.mass());
  const auto br = fstar.breakpoints();
  const auto v = fstar.values();
  double acc = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < v.size() && left < top; ++k) {
    const double hi = std::min(br[k], top);
    if (std::isinf(q)) {
      auto g = [&](double t) { return F(t) * W(t); };
      acc = std::max(acc, left == 0.0 ? v[0] * quad::sup_on_interval(W, hi * 1e-12, hi) : quad::sup_on_interval(g, left, hi));
    } else if (left == 0.0) {
      acc += std::pow(v[0], q) * quad::integrate_dt_over_t([&](double t) { return std::pow(W(t), q); }, 0.0, hi, 1e-10);
    } else {
      acc += quad::integrate_dt_over_t([&](double t) { return std::pow(F(t) * W(t), q); }, left, hi, 1e-10);
    }
    left = br[k];
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

// sum_k v_k^q int_{step} w^q dt/t with w the weight of the critical lemma:
// w^q dt/t = d (1+m)^{1-q/a}, so every step integral is a difference of that primitive.
double pesos_f_star_norm(const StepDecreasing& fstar, const PowerLog& psi, double alpha, double q) {
  const double top = std::min(1.0, fstar.mass());
  const auto br = fstar.breakpoints();
  const auto v = fstar.values();
  const double e = 1.0 - q / alpha;
  auto prim = [&](double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::pow(1.0 + m_function(psi, alpha, q, t), e);
  };
  double acc = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < v.size() && left < top; ++k) {
    const double hi = std::min(br[k], top);
    acc += std::pow(v[k], q) * std::max(0.0, prim(hi) - prim(left));
    left = br[k];
  }
  return std::pow(acc, 1.0 / q);
}

// sup_t f*(t) (1+m(t))^{-1/a}
double critical_sup_norm(const StepDecreasing& fstar, const PowerLog& psi, double alpha, double q) {
  const double top = std::min(1.0, fstar.mass());
  const auto br = fstar.breakpoints();
  const auto v = fstar.values();
  double best = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < v.size() && left < top; ++k) {
    // (1+m)^{-1/a} increases with t: the sup on a step sits at its right end
    const double hi = std::min(br[k], top);
    const double m = hi >= 1.0 ? 0.0 : m_function(psi, alpha, q, hi);
    best = std::max(best, v[k] * std::pow(1.0 + m, -1.0 / alpha));
    left = br[k];
  }
  return best;
}

}  // namespace

EmbeddingReport target_norm_check(const Space& space, const Corpus& corpus, const TargetParams& params) {
  const EmbeddingParams& p = params.base;
  check_params(p);
  EmbeddingReport rep;
  rep.theorem = params.oscillation_form ? "weight" : "target";
  rep.params = p;
  rep.upper_dimension = positive_Q(space);
  rep.noncollapsing = noncollapsing_constant(space);
  const double a = p.alpha;
  const double q = p.q;
  const bool dstar = params.oscillation_form;

  std::function<double(const StepDecreasing&)> lhs;
  if (params.target) {
    const TargetNorm target = *params.target;
    const PowerLog w{1.0, target.power, target.log_power, target.loglog_power};
    if (dstar)
      lhs = [=](const StepDecreasing& fs) { return double_star_norm(fs, a, target.q, [w](double t) { return w(t); }); };
    else
      lhs = [target](const StepDecreasing& fs) { return target(fs); };
  } else {
    const PowerLog psi = m_integrand(p.spec, a, p.s, rep.upper_dimension);
    if (m_zero_finite(psi, a, q)) throw PreconditionError("m(0) is finite: the L-infinity check applies instead");
    if (std::isinf(q)) {
      if (dstar) {
        lhs = [=](const StepDecreasing& fs) {
          return double_star_norm(fs, a, q, [&](double t) {
            return std::pow(1.0 + m_function(psi, a, q, std::min(t, 1.0)), -1.0 / a);
          });
        };
      } else {
        lhs = [=](const StepDecreasing& fs) { return critical_sup_norm(fs, psi, a, q); };
      }
    } else if (a < q) {
      if (dstar) {
        lhs = [=](const StepDecreasing& fs) {
          return double_star_norm(fs, a, q, [&](double t) { return pesos_weight(psi, a, q, std::min(t, 1.0 - 1e-15)); });
        };
      } else {
        lhs = [=](const StepDecreasing& fs) { return pesos_f_star_norm(fs, psi, a, q); };
      }
    } else {
      const PowerLog u = params.case3_weight ? *params.case3_weight : default_case3_weight(psi, q);
      check_case3_weight(u, psi, q, params.case3_bound);
      if (dstar)
        lhs = [=](const StepDecreasing& fs) { return double_star_norm(fs, a, q, [u](double t) { return u(t); }); };
      else
        lhs = [u, q](const StepDecreasing& fs) { return weighted_norm(fs, u, q); };
    }
  }
  for (const auto& fn : corpus) {
    EmbeddingRow row;
    row.label = fn.label;
    const StepDecreasing fs = rearrangement(space, fn.values);
    row.lhs = lhs(fs);
    row.rhs = dstar ? oscillation_functional(space, fn.values, p, rep.upper_dimension) + sum_plus_linf_norm(fs, a)
                    : rhs_besov(space, fn.values, p);
    rep.rows.push_back(row);
  }
  fill_constant(rep);
  return rep;
}

EmbeddingReport lp_embedding_report(const Space& space, const Corpus& corpus, double p, double s, double q) {
  if (!(p > 0.0) || std::isinf(p)) throw UnsupportedError("Lp form needs 0 < p < inf");
  EmbeddingParams params;
  params.alpha = std::min(1.0, p);
  params.spec = RISpaceSpec::lp(p / params.alpha);  // X^(alpha) = L^p
  params.s = s;
  params.q = q;
  check_params(params);
  EmbeddingReport rep;
  rep.theorem = "lp";
  rep.params = params;
  rep.upper_dimension = positive_Q(space);
  rep.noncollapsing = noncollapsing_constant(space);
  for (const auto& fn : corpus) {
    EmbeddingRow row;
    row.label = fn.label;
    row.lhs = oscillation_functional(space, fn.values, params, rep.upper_dimension);
    row.rhs = besov_from_levels(level_profile_classic(space, fn.values, p), s, q) +
              sum_plus_linf_norm(rearrangement(space, fn.values), params.alpha);
    rep.rows.push_back(row);
  }
  fill_constant(rep);
  return rep;
}

EmbeddingReport interpolation_report(const Space& space, const Corpus& corpus, const EmbeddingParams& params,
                                     double grid_ratio) {
  check_params(params);
  const RISpaceSpec eff = convexify(params.spec, params.alpha);
  if (!(params.alpha == 1.0 && eff.family == Family::lp && eff.p == 1.0))
    throw PreconditionError("exact K-functional needs alpha = 1 and X^(alpha) = L^1");
  if (!(grid_ratio > 1.0)) throw DomainError("grid ratio must exceed 1");
  EmbeddingReport rep;
  rep.theorem = "interpolation";
  rep.params = params;
  rep.upper_dimension = positive_Q(space);
  rep.noncollapsing = noncollapsing_constant(space);
  const double s = params.s;
  const double q = params.q;
  std::vector<double> ts;
  for (double t = 0.25 * space.min_distance(); t < 4.0 * space.diameter(); t *= grid_ratio) ts.push_back(t);
  ts.push_back(4.0 * space.diameter());
  for (const auto& fn : corpus) {
    EmbeddingRow row;
    row.label = fn.label;
    row.lhs = besov_seminorm(space, fn.values, s, q, params.spec, params.alpha);
    std::vector<double> K(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) K[i] = k_functional_l1(space, fn.values, ts[i]).value;
    double acc = 0.0;
    if (std::isinf(q)) {
      for (std::size_t i = 0; i < ts.size(); ++i) acc = std::max(acc, std::pow(ts[i], -s) * K[i]);
      row.rhs = acc;
    } else {
      // (0, t_0]: K(t) = t K(t_0)/t_0; (t_last, inf): K = K(t_last); between: K(t_i) on (t_{i-1}, t_i]
      acc += std::pow(K[0] / ts[0], q) * std::pow(ts[0], (1.0 - s) * q) / ((1.0 - s) * q);
      for (std::size_t i = 1; i < ts.size(); ++i)
        acc += std::pow(K[i], q) * (std::pow(ts[i - 1], -s * q) - std::pow(ts[i], -s * q)) / (s * q);
      acc += std::pow(K.back(), q) * std::pow(ts.back(), -s * q) / (s * q);
      row.rhs = std::pow(acc, 1.0 / q);
    }
    rep.rows.push_back(row);
  }
  fill_constant(rep);
  return rep;
}

}  // namespace besovmm
