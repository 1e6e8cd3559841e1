#include <cmath>
#include <random>

#include "besovmm/errors.hpp"
#include "besovmm/rearrange.hpp"
#include "besovmm/space.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace besovmm;

TEST_CASE("constant and indicator rearrangements") {
  const Space p4 = make_path(4);
  const std::vector<double> c(4, 2.5);
  const StepDecreasing fc = rearrangement(p4, c);
  REQUIRE(fc.steps() == 1);
  CHECK(fc.mass() == 4.0);
  CHECK(fc.sup() == 2.5);

  const std::vector<double> ind = {0, 1, 1, 0};
  const StepDecreasing fi = rearrangement(p4, ind);
  CHECK(fi(0.0) == 1.0);
  CHECK(fi(1.999) == 1.0);
  CHECK(fi(2.0) == 0.0);
  CHECK(fi(3.5) == 0.0);
}

TEST_CASE("f = (3,1,2) matches the inf formula") {
  const std::vector<double> w = {1, 1, 1};
  const std::vector<double> f = {3, 1, 2};
  const StepDecreasing fs = rearrangement(w, f);
  CHECK(fs.steps() == 3);
  CHECK(std::vector<double>(fs.values().begin(), fs.values().end()) == std::vector<double>{3, 2, 1});
  CHECK(std::vector<double>(fs.breakpoints().begin(), fs.breakpoints().end()) == std::vector<double>{1, 2, 3});
  for (double t = 0.0; t < 3.2; t += 0.01) CHECK(fs(t) == oracle::rearrangement_at(w, f, t));
}

TEST_CASE("maximal average") {
  const std::vector<double> w = {1, 1, 1};
  const StepDecreasing fs = rearrangement(w, std::vector<double>{3, 1, 2});
  CHECK(maximal_average(fs, 2.5) == doctest::Approx(2.2).epsilon(1e-15));
  const StepDecreasing c = rearrangement(w, std::vector<double>{4, 4, 4});
  CHECK(maximal_average(c, 0.3) == 4.0);
  const StepDecreasing ind = rearrangement(w, std::vector<double>{1, 0, 0});
  CHECK(maximal_average(ind, 0.5) == 1.0);
  CHECK(maximal_average(ind, 2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(maximal_average(fs, 0.0), DomainError);
  double prev = maximal_average(fs, 0.01);
  for (double t = 0.02; t <= 3.0; t += 0.01) {
    const double a = maximal_average(fs, t);
    CHECK(a <= prev + 1e-15);
    CHECK(a >= fs(t) * (1 - 1e-15));
    prev = a;
  }
}

TEST_CASE("oscillation") {
  const std::vector<double> w = {1, 1, 1};
  const StepDecreasing c = rearrangement(w, std::vector<double>{2, 2, 2});
  for (double a : {0.25, 0.5, 1.0}) CHECK(oscillation(c, a, 1.7) == 0.0);
  const StepDecreasing ind = rearrangement(w, std::vector<double>{0, 1, 0});
  CHECK(oscillation(ind, 1.0, 2.0) == doctest::Approx(0.5));
  const StepDecreasing fs = rearrangement(w, std::vector<double>{3, 1, 2});
  // f* is right-continuous: f*(2) = 1, the value on [2,3)
  const double want = (std::sqrt(3.0) + std::sqrt(2.0)) / 2 - 1.0;
  CHECK(oscillation(fs, 0.5, 2.0) == doctest::Approx(want).epsilon(1e-14));
  CHECK(oscillation(fs, 0.5, 2.0 - 1e-9) == doctest::Approx((std::sqrt(3.0) + std::sqrt(2.0)) / 2 - std::sqrt(2.0)).epsilon(1e-8));
  // midpoint rule on the inf formula
  const std::vector<double> wts = {1, 1, 1}, vals = {3, 1, 2};
  const int N = 200000;
  double acc = 0.0;
  for (int i = 0; i < N; ++i) acc += std::sqrt(oracle::rearrangement_at(wts, vals, (i + 0.5) * 2.0 / N));
  CHECK(oscillation(fs, 0.5, 2.0) ==
        doctest::Approx(acc / N - std::sqrt(oracle::rearrangement_at(wts, vals, 2.0))).epsilon(1e-6));
}

TEST_CASE("oscillation profile is c_k / t per step") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(12), f(12);
  for (auto& v : w) v = 0.1 + u(rng);
  for (auto& v : f) v = u(rng);
  const StepDecreasing fs = rearrangement(w, f);
  const OscillationProfile prof(fs, 0.7);
  for (double t = 0.01; t < fs.mass(); t *= 1.1) {
    CHECK(prof(t) == doctest::Approx(oscillation(fs, 0.7, t)).epsilon(1e-12));
    CHECK(prof(t) >= 0.0);
  }
}

TEST_CASE("sum plus Linf norm") {
  const std::vector<double> w = {1, 1, 1};
  CHECK(sum_plus_linf_norm(rearrangement(w, std::vector<double>{5, 5, 5}), 0.5) == doctest::Approx(5.0));
  CHECK(sum_plus_linf_norm(rearrangement(std::vector<double>{0.4, 2.0}, std::vector<double>{1, 0}), 1.0) ==
        doctest::Approx(0.4));
  CHECK(sum_plus_linf_norm(rearrangement(w, std::vector<double>{3, 1, 2}), 1.0) == 3.0);
}

TEST_CASE("equimeasurability on random functions") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 23;
    std::vector<double> w(n), f(n);
    for (auto& v : w) v = 0.05 + u(rng);
    for (auto& v : f) v = std::round(8 * (u(rng) - 0.5)) / 2;  // ties and signs
    const StepDecreasing fs = rearrangement(w, f);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += w[i] * std::abs(f[i]);
    CHECK(fs.integral(fs.mass()) == doctest::Approx(total).epsilon(1e-13));
    for (double v : f) {
      const double lam = std::abs(v);
      // |{t : f*(t) > lam}|
      double len = 0.0, prev = 0.0;
      for (std::size_t k = 0; k < fs.steps(); ++k) {
        if (fs.values()[k] > lam) len += fs.breakpoints()[k] - prev;
        prev = fs.breakpoints()[k];
      }
      CHECK(len == doctest::Approx(oracle::distribution(w, f, lam)).epsilon(1e-12));
    }
  }
}

TEST_CASE("power rule and Hardy-Littlewood") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> w(10, 0.3), f(10), g(10), fa(10);
    for (std::size_t i = 0; i < 10; ++i) {
      f[i] = u(rng);
      g[i] = u(rng);
      fa[i] = std::pow(std::abs(f[i]), 0.6);
    }
    const StepDecreasing fs = rearrangement(w, f);
    const StepDecreasing pw = fs.pow(0.6);
    const StepDecreasing direct = rearrangement(w, fa);
    for (double t = 0.0; t < 3.0; t += 0.07) CHECK(pw(t) == doctest::Approx(direct(t)).epsilon(1e-14));
    const StepDecreasing gs = rearrangement(w, g);
    double lhs = 0.0;
    for (std::size_t i = 0; i < 10; ++i) lhs += w[i] * std::abs(f[i] * g[i]);
    double rhs = 0.0;  // both are steps on multiples of 0.3
    for (std::size_t k = 0; k < 10; ++k) rhs += 0.3 * fs(0.3 * k + 0.15) * gs(0.3 * k + 0.15);
    CHECK(lhs <= rhs * (1 + 1e-14));
  }
}

TEST_CASE("invalid step data") {
  CHECK_THROWS_AS(StepDecreasing({1, 2}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(StepDecreasing({2, 1}, {2, 1}), ValidationError);
  CHECK_THROWS_AS(rearrangement(std::vector<double>{1, 1}, std::vector<double>{1}), ValidationError);
}
