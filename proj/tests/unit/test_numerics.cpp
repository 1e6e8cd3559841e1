#include <cmath>
#include <random>

#include "besovmm/errors.hpp"
#include "besovmm/lp.hpp"
#include "besovmm/quadrature.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace besovmm;

TEST_CASE("Gauss-Kronrod and dt/t integrals") {
  CHECK(quad::integrate([](double t) { return std::sin(t); }, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(quad::integrate_dt_over_t([](double t) { return std::sqrt(t); }, 0.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(quad::integrate_dt_over_t([](double t) { return t; }, 0.5, 2.0) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("power-log integrals against quadrature") {
  for (const PowerLog w : {PowerLog{2.0, 0.7, 0.0, 0.0}, PowerLog{1.0, 0.3, -1.5, 0.0}, PowerLog{1.0, 0.0, -2.0, 0.5},
                           PowerLog{1.0, 0.0, -1.0, -2.0}})
    for (double a : {1e-6, 0.01, 0.3}) {
      const double want = quad::integrate_dt_over_t([&](double t) { return w(t); }, a, 1.0, 1e-13);
      CHECK(quad::integrate_powerlog(w, a, 1.0) == doctest::Approx(want).epsilon(1e-9));
    }
  // pure power, exact
  CHECK(quad::integrate_powerlog(PowerLog{1.0, 2.0, 0.0, 0.0}, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("suprema") {
  const PowerLog w{1.0, 0.5, -2.0, 0.0};  // sqrt(t) / (1+ln 1/t)^2 has an interior max near e^{-3}
  double dense = 0.0;
  for (int i = 0; i <= 200000; ++i) dense = std::max(dense, w(std::exp(-12.0 + 12.0 * i / 200000)));
  CHECK(quad::sup_powerlog(w, std::exp(-12.0), 1.0) == doctest::Approx(dense).epsilon(1e-8));
  CHECK(quad::sup_on_interval([](double t) { return -(t - 0.3) * (t - 0.3); }, 0.1, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("PowerLog algebra") {
  const PowerLog a{2.0, 0.5, 1.0, -1.0};
  const PowerLog b = a.pow(2.0);
  for (double t : {1e-5, 0.1, 0.9}) {
    CHECK(b(t) == doctest::Approx(a(t) * a(t)));
    CHECK(a.times(b)(t) == doctest::Approx(a(t) * b(t)));
  }
  CHECK(PowerLog{1.0, 3.0, 0.0, 0.0}.pure_power());
}

TEST_CASE("interior point LP against vertex enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nv = 2 + trial % 3;
    oracle::SmallLp small;
    lp::Problem prob;
    for (std::size_t j = 0; j < nv; ++j) {
      const double c = 0.1 + std::abs(u(rng));
      small.c.push_back(c);
      prob.add_var(c);
      std::vector<double> row(nv, 0.0);
      row[j] = 1.0;
      small.A.push_back(row);
      small.b.push_back(0.0);
    }
    for (int i = 0; i < 4; ++i) {
      std::vector<double> row(nv);
      std::vector<std::pair<std::size_t, double>> co;
      for (std::size_t j = 0; j < nv; ++j) {
        row[j] = std::abs(u(rng)) + 0.05;
        co.emplace_back(j, row[j]);
      }
      const double rhs = u(rng);
      small.A.push_back(row);
      small.b.push_back(rhs);
      prob.add_row(co, rhs);
    }
    const auto want = oracle::vertex_enumeration(small);
    REQUIRE(want.has_value());
    const lp::Result r = lp::solve(prob);
    REQUIRE(r.converged);
    CHECK(r.primal_objective == doctest::Approx(*want).epsilon(1e-8).scale(1.0));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("LP with a free variable") {
  // min x1 s.t. x1 - x0 >= 2, x1 + x0 >= 0, x0 free -> x0 = -1, x1 = 1
  lp::Problem prob;
  prob.add_var(0.0, true);
  prob.add_var(1.0);
  prob.add_row({{0, -1.0}, {1, 1.0}}, 2.0);
  prob.add_row({{0, 1.0}, {1, 1.0}}, 0.0);
  const lp::Result r = lp::solve(prob);
  REQUIRE(r.converged);
  CHECK(r.primal_objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("LP input validation and dumps") {
  lp::Problem bad;
  bad.add_var(1.0);
  bad.add_row({{3, 1.0}}, 0.0);
  CHECK_THROWS_AS(lp::solve(bad), ValidationError);
  lp::Problem unb;
  unb.add_var(-1.0);
  CHECK_THROWS_AS(lp::solve(unb), SolverError);
  CHECK(lp::to_text(bad).find(">= 0") != std::string::npos);
}
