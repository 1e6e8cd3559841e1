#include <cmath>
#include <random>

#include "besovmm/corpus.hpp"
#include "besovmm/errors.hpp"
#include "besovmm/rearrange.hpp"
#include "besovmm/smoothness.hpp"
#include "besovmm/space.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace besovmm;

namespace {

Space two_points(double d, double w0 = 1.0, double w1 = 1.0) { return Space(2, {0.0, d, d, 0.0}, {w0, w1}); }

std::vector<double> random_f(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> f(n);
  for (auto& v : f) v = u(rng);
  return f;
}

}  // namespace

TEST_CASE("nabla on the two-point space") {
  const Space s = two_points(1.0);
  const std::vector<double> f = {0.0, 1.0};
  CHECK(nabla(s, f, 1.0, 1.0) == std::vector<double>{0.0, 0.0});
  const auto g = nabla(s, f, 1.5, 1.0);
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(0.5));
  for (double r : {0.5, 2.0, 10.0}) CHECK(nabla(s, std::vector<double>{3, 3}, r, 0.5) == std::vector<double>{0, 0});
}

TEST_CASE("nabla matches the definition on random data") {
  const Space s = make_random_geometric(30, 0.3, 4);
  const auto f = random_f(30, 8);
  for (double a : {0.5, 1.0, 2.0})
    for (double r : {0.1, 0.3, 0.7}) {
      const auto got = nabla(s, f, r, a);
      const auto want = oracle::nabla(s, f, r, a);
      for (std::size_t x = 0; x < 30; ++x) CHECK(got[x] == doctest::Approx(want[x]).epsilon(1e-12));
    }
}

TEST_CASE("modulus") {
  const Space s = two_points(1.0);
  CHECK(modulus(s, std::vector<double>{0, 1}, 1.5, RISpaceSpec::lp(1.0), 1.0) == doctest::Approx(1.0));
  CHECK(modulus(s, std::vector<double>{2, 2}, 1.5, RISpaceSpec::lp(2.0), 1.0) == 0.0);
  const Space p3 = make_path(3);
  const std::vector<double> ind = {0, 1, 0};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int i = 0; i < 10; ++i) {
    const double r = u(rng);
    const auto g = oracle::nabla(p3, ind, r, 1.0);
    CHECK(modulus(p3, ind, r, RISpaceSpec::lp(2.0), 1.0) == doctest::Approx(oracle::lp_norm(p3, g, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("level profile agrees with pointwise moduli") {
  const Space g = make_grid(4, 4);
  const auto f = random_f(16, 2);
  const RISpaceSpec spec = RISpaceSpec::lorentz(2.0, 1.0);
  const LevelProfile prof = level_profile(g, f, spec, 0.5);
  for (double r : {0.5, 1.0, 1.5, 2.5, 3.2, 6.5, 100.0})
    CHECK(prof(r) == doctest::Approx(modulus(g, f, r, spec, 0.5)).epsilon(1e-12));
  CHECK(prof.tail() == doctest::Approx(modulus(g, f, 100.0, spec, 0.5)).epsilon(1e-12));
}

TEST_CASE("Besov seminorm") {
  const Space p5 = make_path(5);
  CHECK(besov_seminorm(p5, std::vector<double>(5, 1.0), 0.5, 2.0, RISpaceSpec::lp(1.0), 1.0) == 0.0);

  // synthetic profile: E = c on (r0, inf)
  const double c = 1.7, r0 = 0.8, s = 0.4, q = 1.5;
  LevelProfile prof{{r0}, {c}};
  CHECK(std::pow(besov_from_levels(prof, s, q), q) ==
        doctest::Approx(std::pow(c, q) * std::pow(r0, -s * q) / (s * q)).epsilon(1e-8));
  CHECK(besov_from_levels(prof, s, kInfinity) == doctest::Approx(c * std::pow(r0, -s)));

  // L1 is 1-homogeneous in the measure
  const Space g = make_grid(5, 5);
  const auto u = tent_function(g, 12);
  const double b1 = besov_seminorm(g, u, 0.5, 1.0, RISpaceSpec::lp(1.0), 1.0);
  const double b2 = besov_seminorm(g.with_scaled_weights(2.0), u, 0.5, 1.0, RISpaceSpec::lp(1.0), 1.0);
  CHECK(b1 > 0.0);
  CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-12));

  // grid evaluation converges to the exact level integral
  BesovOptions grid;
  grid.exact = false;
  grid.grid_ratio = 1.01;
  CHECK(besov_seminorm(g, u, 0.5, 1.0, RISpaceSpec::lp(1.0), 1.0, grid) == doctest::Approx(b1).epsilon(0.02));
}

TEST_CASE("Hajlasz L1 seminorm") {
  CHECK(hajlasz_seminorm_l1(make_path(4), std::vector<double>(4, 2.0)).value == doctest::Approx(0.0).scale(1.0));
  const Space s = two_points(2.0, 0.5, 3.0);
  const HajlaszL1 h = hajlasz_seminorm_l1(s, std::vector<double>{1.0, 4.0});
  CHECK(h.value == doctest::Approx(3.0 / 2.0 * 0.5).epsilon(1e-9));
  CHECK(h.certificate.relative_gap <= kLpGapTol);

  const Space p5 = make_path(5);
  const auto f = random_f(5, 12);
  const HajlaszL1 opt = hajlasz_seminorm_l1(p5, f);
  const auto canon = canonical_gradient(p5, f);
  double canon_l1 = 0.0;
  for (double v : canon) canon_l1 += v;
  CHECK(opt.value <= canon_l1 * (1 + 1e-12));
  const auto want = oracle::vertex_enumeration(oracle::hajlasz_lp(p5, f));
  REQUIRE(want.has_value());
  CHECK(opt.value == doctest::Approx(*want).epsilon(1e-8));
}

TEST_CASE("canonical gradient") {
  const Space s = two_points(2.0);
  CHECK(canonical_gradient(s, std::vector<double>{5, 5}) == std::vector<double>{0, 0});
  const auto g = canonical_gradient(s, std::vector<double>{0, 1});
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(0.5));
  const Space geo = make_random_geometric(40, 0.3, 9);
  const auto f = random_f(40, 1);
  CHECK_NOTHROW(GradientField(geo, f, canonical_gradient(geo, f)));
  CHECK_THROWS_AS(GradientField(geo, f, std::vector<double>(40, 0.0)), ValidationError);
  const auto repaired = repair_gradient(geo, f, std::vector<double>(40, 0.0));
  CHECK_NOTHROW(GradientField(geo, f, repaired));
}

TEST_CASE("Hajlasz upper bound") {
  const Space p5 = make_path(5);
  CHECK(hajlasz_seminorm_upper(p5, std::vector<double>(5, 1.0), RISpaceSpec::lp(2.0), 1.0).value == 0.0);
  const auto f = random_f(5, 21);
  const auto up1 = hajlasz_seminorm_upper(p5, f, RISpaceSpec::lp(1.0), 1.0);
  CHECK(up1.value == doctest::Approx(hajlasz_seminorm_l1(p5, f).value).epsilon(1e-9));
  const auto up2 = hajlasz_seminorm_upper(p5, f, RISpaceSpec::lp(2.0), 1.0);
  REQUIRE(up2.lower.has_value());
  CHECK(*up2.lower <= up2.value * (1 + 1e-12));
}

TEST_CASE("K-functional for L1 and M^{1,1}") {
  const Space s = two_points(1.0);
  const std::vector<double> f = {0.0, 1.0};
  for (double t : {0.05, 0.25, 0.5, 0.9, 1.0, 2.0, 10.0}) {
    const KFunctional k = k_functional_l1(s, f, t);
    const auto want = oracle::vertex_enumeration(oracle::k_functional_lp(s, f, t));
    REQUIRE(want.has_value());
    CHECK(k.value == doctest::Approx(*want).epsilon(1e-8).scale(1.0));
    CHECK(k.value == doctest::Approx(std::min(t, 1.0)).epsilon(1e-8).scale(1.0));
  }
  const Space p8 = make_path(8);
  CHECK(k_functional_l1(p8, std::vector<double>(8, -3.0), 0.7).value == doctest::Approx(0.0).scale(1.0));
  const auto g = random_f(8, 5);
  double l1 = 0.0;
  for (double v : g) l1 += std::abs(v);
  for (double t : {0.1, 1.0, 10.0}) CHECK(k_functional_l1(p8, g, t).value <= l1 * (1 + 1e-9));
}

TEST_CASE("K-functional bounds") {
  const Space p8 = make_path(8);
  const KBounds zero = k_bounds(p8, std::vector<double>(8, 2.0), 0.5, RISpaceSpec::lp(1.0), 1.0);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);
  REQUIRE(zero.exact.has_value());
  CHECK(*zero.exact == doctest::Approx(0.0).scale(1.0));
  for (const auto& fn : corpus_random_uniform(p8, 5, 3))
    for (double t : {0.3, 1.0, 4.0}) {
      const KBounds b = k_bounds(p8, fn.values, t, RISpaceSpec::lp(1.0), 1.0);
      CHECK(b.upper >= b.lower);
      REQUIRE(b.exact.has_value());
      CHECK(*b.exact > 0.0);
    }
}

TEST_CASE("averaging operator") {
  const Space g = make_grid(5, 5);
  const std::vector<double> c(25, 1.5);
  for (double r : {0.5, 1.5, 3.0}) {
    const auto tr = t_r_operator(g, c, r, 0.5);
    for (double v : tr) CHECK(v == doctest::Approx(1.5).epsilon(1e-14));
  }
  const auto f = random_f(25, 77);
  const double cmu = doubling_constant(g);
  const auto radii = critical_radii(g);
  const auto all = t_r_operator(g, f, radii, 0.5);
  double fmax = 0.0, fa = 0.0;
  for (std::size_t x = 0; x < 25; ++x) {
    fmax = std::max(fmax, std::abs(f[x]));
    fa += g.weight(x) * std::sqrt(std::abs(f[x]));
  }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const auto single = t_r_operator(g, f, radii[k], 0.5);
    double ta = 0.0;
    for (std::size_t x = 0; x < 25; ++x) {
      CHECK(all[k][x] == doctest::Approx(single[x]).epsilon(1e-12));
      CHECK(single[x] <= fmax * (1 + 1e-12));
      ta += g.weight(x) * std::sqrt(single[x]);
    }
    CHECK(ta <= cmu * fa * (1 + 1e-12));
  }
}

TEST_CASE("tent function and its gradient") {
  const Space p5 = make_path(5);
  CHECK(tent_function(p5, 2) == std::vector<double>{0, 1, 1, 1, 0});
  const Space far = make_path(3, 5.0);
  CHECK(tent_function(far, 1) == std::vector<double>{0, 1, 0});
  const Space geo = make_random_geometric(30, 0.3, 2);
  for (std::size_t x0 = 0; x0 < 30; x0 += 7)
    CHECK_NOTHROW(GradientField(geo, tent_function(geo, x0, 0.2), tent_gradient(geo, x0, 0.2)));
}
