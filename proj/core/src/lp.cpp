#include "besovmm/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "besovmm/errors.hpp"

namespace besovmm::lp {

namespace {

using Vec = Eigen::VectorXd;

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct Sparse {
  const Problem& p;

  Vec times(const Vec& x) const {
    Vec out(static_cast<Eigen::Index>(p.rows.size()));
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      double acc = 0.0;
      for (const auto& [j, a] : p.rows[i].coeffs) acc += a * x[static_cast<Eigen::Index>(j)];
      out[static_cast<Eigen::Index>(i)] = acc;
    }
    return out;
  }

  Vec transpose_times(const Vec& y) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(p.num_vars()));
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      const double yi = y[static_cast<Eigen::Index>(i)];
      for (const auto& [j, a] : p.rows[i].coeffs) out[static_cast<Eigen::Index>(j)] += a * yi;
    }
    return out;
  }
};

double max_step(const Vec& v, const Vec& dv, const std::vector<bool>* skip) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (skip && (*skip)[static_cast<std::size_t>(i)]) continue;
    if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
  }
  return a;
}

/// Projects (y, z) onto {A_act^T y + z_J = c} where act/J is the partition the iterate predicts
/// (y_i > s_i, z_j > x_j). Succeeds if the projection stays nonnegative.
bool polish_dual(const Problem& problem, const Sparse& A, const Vec& c, const Vec& x, const Vec& s, const Vec& y,
                 const Vec& z, Vec& yp, Vec& zp) {
  const auto n = x.size();
  const auto m = s.size();
  std::vector<bool> act(static_cast<std::size_t>(m));
  std::vector<bool> jz(static_cast<std::size_t>(n));
  yp = Vec::Zero(m);
  zp = Vec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (y[i] > s[i]) {
      act[static_cast<std::size_t>(i)] = true;
      yp[i] = y[i];
    }
  for (Eigen::Index j = 0; j < n; ++j)
    if (!problem.free[static_cast<std::size_t>(j)] && z[j] > x[j]) {
      jz[static_cast<std::size_t>(j)] = true;
      zp[j] = z[j];
    }
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    if (!act[i]) continue;
    const auto& co = problem.rows[i].coeffs;
    for (const auto& [j, a] : co)
      for (const auto& [k, bb] : co) G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += a * bb;
  }
  for (Eigen::Index j = 0; j < n; ++j)
    if (jz[static_cast<std::size_t>(j)]) G(j, j) += 1.0;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success) return false;
  for (int pass = 0; pass < 2; ++pass) {
    const Vec r = c - A.transpose_times(yp) - zp;
    const Vec w = ldlt.solve(r);
    if (!w.allFinite()) return false;
    const Vec aw = A.times(w);
    for (Eigen::Index i = 0; i < m; ++i)
      if (act[static_cast<std::size_t>(i)]) yp[i] += aw[i];
    for (Eigen::Index j = 0; j < n; ++j)
      if (jz[static_cast<std::size_t>(j)]) zp[j] += w[j];
  }
  return yp.minCoeff() >= 0.0 && (n == 0 || zp.minCoeff() >= 0.0);
}

}  // namespace

Result solve(const Problem& problem, const Options& options) {
  const auto n = static_cast<Eigen::Index>(problem.num_vars());
  const auto m = static_cast<Eigen::Index>(problem.rows.size());
  if (problem.free.size() != problem.cost.size()) throw ValidationError("LP: free flags do not match variables");
  for (const auto& row : problem.rows)
    for (const auto& [j, a] : row.coeffs) {
      (void)a;
      if (static_cast<Eigen::Index>(j) >= n) throw ValidationError("LP: column index out of range");
    }

  Vec c(n);
  for (Eigen::Index j = 0; j < n; ++j) c[j] = problem.cost[static_cast<std::size_t>(j)];
  Vec b(m);
  for (Eigen::Index i = 0; i < m; ++i) b[i] = problem.rows[static_cast<std::size_t>(i)].rhs;
  const std::vector<bool>& is_free = problem.free;
  Eigen::Index n_nonneg = 0;
  for (bool f : is_free) n_nonneg += f ? 0 : 1;

  Result res;
  if (m == 0) {
    for (Eigen::Index j = 0; j < n; ++j)
      if ((is_free[static_cast<std::size_t>(j)] && c[j] != 0.0) || c[j] < 0.0)
        throw SolverError("LP unbounded (no constraints)", dump_to_temp(problem, "unbounded"));
    res.x.assign(static_cast<std::size_t>(n), 0.0);
    res.converged = true;
    return res;
  }

  const Sparse A{problem};
  Vec x = Vec::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) x[j] = is_free[static_cast<std::size_t>(j)] ? 0.0 : 1.0;
  Vec s = A.times(x) - b;
  for (Eigen::Index i = 0; i < m; ++i) s[i] = std::max(1.0, s[i]);
  Vec y = Vec::Ones(m);
  Vec z = Vec::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
    if (!is_free[static_cast<std::size_t>(j)]) z[j] = std::max(1.0, std::abs(c[j]));

  const double bnorm = inf_norm(b);
  const double cnorm = inf_norm(c);
  const double denom_mu = static_cast<double>(n_nonneg + m);

  Eigen::MatrixXd M(n, n);
  Eigen::LDLT<Eigen::MatrixXd> ldlt;

  auto mu_of = [&](const Vec& xx, const Vec& zz, const Vec& ss, const Vec& yy) {
    double acc = ss.dot(yy);
    for (Eigen::Index j = 0; j < n; ++j)
      if (!is_free[static_cast<std::size_t>(j)]) acc += xx[j] * zz[j];
    return acc / denom_mu;
  };

  // near-degenerate optima can stall just short of gap_tol; fall back to the best iterate
  Result best;
  double best_merit = std::numeric_limits<double>::infinity();

  for (int it = 0; it < options.max_iterations; ++it) {
    const Vec rp = b - A.times(x) + s;
    Vec rd = c - A.transpose_times(y) - z;
    const double pobj = c.dot(x);
    const double dobj = b.dot(y);
    res.iterations = it;
    res.primal_objective = pobj;
    res.dual_objective = dobj;
    res.relative_gap = std::abs(pobj - dobj) / std::max({std::abs(pobj), std::abs(dobj), 1e-30});
    res.primal_infeasibility = inf_norm(rp) / (1.0 + bnorm);
    res.dual_infeasibility = inf_norm(rd) / (1.0 + cnorm);
    if (res.relative_gap < options.gap_tol && res.primal_infeasibility < options.feas_tol &&
        res.dual_infeasibility < options.feas_tol) {
      res.converged = true;
      break;
    }
    if (res.relative_gap < 1e-5 && res.primal_infeasibility < options.feas_tol) {
      Vec yp, zp;
      if (polish_dual(problem, A, c, x, s, y, z, yp, zp)) {
        const double dp = b.dot(yp);
        const double gp = std::abs(pobj - dp) / std::max({std::abs(pobj), std::abs(dp), 1e-30});
        const double dinf = inf_norm(c - A.transpose_times(yp) - zp) / (1.0 + cnorm);
        if (gp < options.gap_tol && dinf < options.feas_tol) {
          res.dual_objective = dp;
          res.relative_gap = gp;
          res.dual_infeasibility = dinf;
          res.converged = true;
          y = yp;
          break;
        }
      }
    }
    const double merit = std::max({res.relative_gap, res.primal_infeasibility, res.dual_infeasibility});
    if (merit < best_merit) {
      best_merit = merit;
      best = res;
      best.x.assign(x.data(), x.data() + n);
      best.y.assign(y.data(), y.data() + m);
    }
    const double mu = mu_of(x, z, s, y);

    const Vec D = y.cwiseQuotient(s);
    M.setZero();
    for (std::size_t i = 0; i < problem.rows.size(); ++i) {
      const double di = D[static_cast<Eigen::Index>(i)];
      const auto& co = problem.rows[i].coeffs;
      for (const auto& [j, a] : co)
        for (const auto& [k, bb] : co) M(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += di * a * bb;
    }
    double maxdiag = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!is_free[static_cast<std::size_t>(j)]) M(j, j) += z[j] / x[j];
      maxdiag = std::max(maxdiag, M(j, j));
    }
    const double reg = 1e-15 * std::max(1.0, maxdiag);
    for (Eigen::Index j = 0; j < n; ++j) M(j, j) += reg;
    ldlt.compute(M);
    if (ldlt.info() != Eigen::Success) break;

    auto direction = [&](const Vec& rxz, const Vec& rsy, Vec& dx, Vec& ds, Vec& dy, Vec& dz) {
      Vec t1 = (rsy + y.cwiseProduct(rp)).cwiseQuotient(s);
      Vec rhs = A.transpose_times(t1) - rd;
      for (Eigen::Index j = 0; j < n; ++j)
        if (!is_free[static_cast<std::size_t>(j)]) rhs[j] += rxz[j] / x[j];
      dx = ldlt.solve(rhs);
      ds = A.times(dx) - rp;
      dy = (rsy - y.cwiseProduct(ds)).cwiseQuotient(s);
      dz = Vec::Zero(n);
      for (Eigen::Index j = 0; j < n; ++j)
        if (!is_free[static_cast<std::size_t>(j)]) dz[j] = (rxz[j] - z[j] * dx[j]) / x[j];
    };

    Vec rxz = -x.cwiseProduct(z);
    Vec rsy = -s.cwiseProduct(y);
    Vec dx, ds, dy, dz;
    direction(rxz, rsy, dx, ds, dy, dz);
    double ap = std::min({1.0, max_step(x, dx, &is_free), max_step(s, ds, nullptr)});
    double ad = std::min({1.0, max_step(z, dz, &is_free), max_step(y, dy, nullptr)});
    const double mu_aff = mu_of(x + ap * dx, z + ad * dz, s + ap * ds, y + ad * dy);
    const double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3.0);

    for (Eigen::Index j = 0; j < n; ++j)
      rxz[j] = is_free[static_cast<std::size_t>(j)] ? 0.0 : sigma * mu - x[j] * z[j] - dx[j] * dz[j];
    for (Eigen::Index i = 0; i < m; ++i) rsy[i] = sigma * mu - s[i] * y[i] - ds[i] * dy[i];
    direction(rxz, rsy, dx, ds, dy, dz);
    const double eta = std::clamp(1.0 - 10.0 * mu, 0.9, 0.99995);
    ap = std::min(1.0, eta * std::min(max_step(x, dx, &is_free), max_step(s, ds, nullptr)));
    ad = std::min(1.0, eta * std::min(max_step(z, dz, &is_free), max_step(y, dy, nullptr)));
    x += ap * dx;
    s += ap * ds;
    y += ad * dy;
    z += ad * dz;
    for (Eigen::Index j = 0; j < n; ++j)
      if (is_free[static_cast<std::size_t>(j)]) z[j] = 0.0;
  }

  if (res.converged) {
    res.x.assign(x.data(), x.data() + n);
    res.y.assign(y.data(), y.data() + m);
    return res;
  }
  if (best.relative_gap <= options.fallback_gap_tol && best.primal_infeasibility < options.feas_tol &&
      best.dual_infeasibility < options.fallback_gap_tol) {
    best.converged = true;
    return best;
  }
  res.x.assign(x.data(), x.data() + n);
  res.y.assign(y.data(), y.data() + m);
  return res;
}

std::string to_text(const Problem& problem) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "vars " << problem.num_vars() << " rows " << problem.rows.size() << "\n";
  os << "minimize";
  for (std::size_t j = 0; j < problem.cost.size(); ++j)
    os << " " << problem.cost[j] << (problem.free[j] ? "[free]" : "");
  os << "\n";
  for (const auto& row : problem.rows) {
    for (const auto& [j, a] : row.coeffs) os << a << "*x" << j << " ";
    os << ">= " << row.rhs << "\n";
  }
  return os.str();
}

std::string dump_to_temp(const Problem& problem, const std::string& tag) {
  const std::string text = to_text(problem);
  const auto h = std::hash<std::string>{}(text);
  std::error_code ec;
  const auto dir = std::filesystem::temp_directory_path(ec);
  const auto path = (ec ? std::filesystem::path(".") : dir) / ("besovmm_lp_" + tag + "_" + std::to_string(h) + ".txt");
  std::ofstream out(path);
  out << text;
  return path.string();
}

}  // namespace besovmm::lp
