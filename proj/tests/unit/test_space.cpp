#include <cmath>
#include <random>

#include "besovmm/errors.hpp"
#include "besovmm/space.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace besovmm;

namespace {

Space two_points(double d, double w0 = 1.0, double w1 = 1.0) { return Space(2, {0.0, d, d, 0.0}, {w0, w1}); }

// C_mu by scanning a dense radius grid; independent of the critical-radius enumeration
double doubling_dense(const Space& s, int samples) {
  double c = 1.0;
  const double top = 2.0 * s.diameter() + 1.0;
  for (int k = 1; k <= samples; ++k) {
    const double r = top * k / samples;
    for (std::size_t x = 0; x < s.size(); ++x)
      c = std::max(c, oracle::ball_measure(s, x, 2 * r) / oracle::ball_measure(s, x, r));
  }
  return c;
}

}  // namespace

TEST_CASE("two-point space has mass 2 and diameter 1") {
  const Space s = two_points(1.0);
  CHECK(s.total_mass() == 2.0);
  CHECK(s.diameter() == 1.0);
  CHECK(s.min_distance() == 1.0);
}

TEST_CASE("path metric is shortest path") {
  const Space p3 = make_path(3);
  CHECK(p3.distance(0, 2) == 2.0);
  CHECK(p3.distance(2, 1) == 1.0);
}

TEST_CASE("triangle violation names the triple") {
  const std::vector<double> d = {0, 1, 5, 1, 0, 1, 5, 1, 0};
  try {
    Space(3, d, {1, 1, 1});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("triangle inequality violated at (0,1,2)") != std::string::npos);
  }
}

TEST_CASE("asymmetric and nonpositive inputs are rejected") {
  CHECK_THROWS_AS(Space(2, {0, 1, 2, 0}, {1, 1}), ValidationError);
  CHECK_THROWS_AS(Space(2, {0, 1, 1, 0}, {1, -1}), ValidationError);
  CHECK_THROWS_AS(Space(2, {0, 0, 0, 0}, {1, 1}), ValidationError);
}

TEST_CASE("balls use the strict inequality") {
  const Space p3 = make_path(3);
  CHECK(p3.ball(1, 1.5) == std::vector<std::size_t>{0, 1, 2});
  CHECK(p3.ball(0, 1.0) == std::vector<std::size_t>{0});
  CHECK(p3.ball(2, p3.diameter() + 1).size() == 3);
}

TEST_CASE("balls are monotone in the radius") {
  const Space g = make_random_geometric(30, 0.3, 7);
  for (std::size_t x = 0; x < g.size(); x += 5) {
    double prev = 0.0;
    for (double r = 0.01; r < 2.0; r *= 1.3) {
      const double m = g.ball_measure(x, r);
      CHECK(m >= prev);
      CHECK(m == doctest::Approx(oracle::ball_measure(g, x, r)).epsilon(1e-14));
      prev = m;
    }
  }
}

TEST_CASE("doubling constant on small spaces") {
  CHECK(doubling_constant(Space(1, {0.0}, {4.0})) == 1.0);
  CHECK(upper_dimension(Space(1, {0.0}, {4.0})) == 0.0);
  const Space s2 = two_points(1.0);
  CHECK(doubling_constant(s2) == 2.0);
  CHECK(upper_dimension(s2) == 1.0);
  const Space p5 = make_path(5);
  const double c = doubling_constant(p5);
  CHECK(c == doctest::Approx(doubling_dense(p5, 10000)).epsilon(1e-12));
  CHECK(upper_dimension(p5) == doctest::Approx(std::log2(c)));
}

TEST_CASE("doubling certificate holds at every critical radius") {
  for (const Space& s : {make_path(9), make_grid(4, 5), make_random_geometric(25, 0.35, 3)}) {
    const double c = doubling_constant(s);
    for (double r : critical_radii(s))
      for (std::size_t x = 0; x < s.size(); ++x) CHECK(s.ball_measure(x, 2 * r) <= c * s.ball_measure(x, r) * (1 + 1e-12));
  }
}

TEST_CASE("iterated doubling holds with the computed Q") {
  const Space s = make_random_geometric(20, 0.4, 11);
  const double Q = upper_dimension(s);
  const std::vector<double> radii = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      for (double r : radii)
        for (double R : radii) {
          if (r > R) continue;
          // B(x,r) inside B(y,R)
          bool inside = true;
          for (std::size_t z : s.ball(x, r)) inside = inside && s.distance(y, z) < R;
          if (!inside) continue;
          CHECK(s.ball_measure(x, r) >= std::pow(r / (4 * R), Q) * s.ball_measure(y, R) * (1 - 1e-12));
        }
}

TEST_CASE("noncollapsing constant") {
  CHECK(noncollapsing_constant(Space(1, {0.0}, {3.0})) == 3.0);
  CHECK(noncollapsing_constant(two_points(0.5, 1.0, 2.0)) == 3.0);
  const Space p5 = make_path(5);
  for (double eps : {1.0, 0.1, 1e-3}) {
    const Space scaled = p5.with_scaled_weights(eps);
    CHECK(noncollapsing_constant(scaled) == doctest::Approx(eps * noncollapsing_constant(p5)).epsilon(1e-15));
    CHECK(doubling_constant(scaled) == doctest::Approx(doubling_constant(p5)).epsilon(1e-15));
  }
}

TEST_CASE("JSON round trip and coordinate input") {
  const Space g = make_grid(3, 2);
  const Space back = space_from_json(space_to_json(g));
  REQUIRE(back.size() == g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y) CHECK(back.distance(x, y) == g.distance(x, y));
  const Space c = space_from_json(R"({"coords":[[0,0],[3,4]],"metric":"euclidean","weights":[1,2]})");
  CHECK(c.distance(0, 1) == doctest::Approx(5.0));
  CHECK(c.total_mass() == 3.0);
  CHECK_THROWS_AS(space_from_json(R"({"coords":[[0],[1]],"metric":"taxicab","weights":[1,1]})"), ValidationError);
}
