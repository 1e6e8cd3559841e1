#include <cmath>
#include <numeric>

#include "besovmm/errors.hpp"
#include "besovmm/rispace.hpp"
#include "doctest.h"

using namespace besovmm;

namespace {

StepDecreasing indicator(double m0) { return StepDecreasing({m0}, {1.0}); }

}  // namespace

TEST_CASE("Lp norm of an indicator") {
  for (double p : {0.5, 1.0, 2.0, 3.5})
    for (double m0 : {1e-3, 0.2, 1.0, 7.0})
      CHECK(quasi_norm(RISpaceSpec::lp(p), indicator(m0)) == doctest::Approx(std::pow(m0, 1 / p)).epsilon(1e-13));
}

TEST_CASE("weak Lp is the sup over breakpoints") {
  const double p = 1.5;
  std::vector<double> br, v;
  for (int k = 1; k <= 40; ++k) {
    br.push_back(k);
    v.push_back(std::pow(k - 0.5, -1 / p));
  }
  const StepDecreasing fs(br, v);
  double dense = 0.0;
  for (int i = 1; i <= 400000; ++i) {
    const double t = 40.0 * i / 400000 - 1e-9;
    dense = std::max(dense, std::pow(t, 1 / p) * fs(t));
  }
  CHECK(quasi_norm(RISpaceSpec::lorentz(p, kInfinity), fs) == doctest::Approx(dense).epsilon(1e-6));
}

TEST_CASE("Lorentz-Zygmund fundamental function shape") {
  const RISpaceSpec lz = RISpaceSpec::lorentz_zygmund(2.0, 2.0, 0.5);
  double lo = kInfinity, hi = 0.0;
  for (double m0 = 1e-4; m0 <= 1.0; m0 *= 1.5) {
    const double ratio = quasi_norm(lz, indicator(m0)) / (std::sqrt(m0) * std::pow(1 + std::log(1 / m0), 0.5));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 2.0);
}

TEST_CASE("fundamental functions") {
  for (double t : {1e-3, 0.5, 1.0, 4.0}) {
    CHECK(fundamental_function(RISpaceSpec::lp(3.0), t) == doctest::Approx(std::cbrt(t)));
    const PowerLog phi{1.0, 0.5, 0.0, 0.0};
    CHECK(fundamental_function(RISpaceSpec::marcinkiewicz(phi), t) == doctest::Approx(std::sqrt(t)).epsilon(1e-12));
    RISpaceSpec x = RISpaceSpec::lorentz(2.0, 3.0);
    x.convexify_power = 2.5;
    const RISpaceSpec base = RISpaceSpec::lorentz(2.0, 3.0);
    CHECK(fundamental_function(x, t) == doctest::Approx(std::pow(fundamental_function(base, t), 1 / 2.5)));
    CHECK(dual_fundamental_function(RISpaceSpec::lp(2.0), t) == doctest::Approx(std::sqrt(t)));
  }
  CHECK_THROWS_AS(fundamental_function(RISpaceSpec::lp(1.0), 0.0), DomainError);
}

TEST_CASE("convexification") {
  CHECK(convexify(RISpaceSpec::lp(1.0), 0.5) == RISpaceSpec::lp(0.5));
  CHECK(convexify(RISpaceSpec::lorentz(1.0, kInfinity), 2.0) == RISpaceSpec::lorentz(2.0, kInfinity));
  const RISpaceSpec lz = RISpaceSpec::lorentz_zygmund(1.5, 2.0, 0.5);
  CHECK(convexify(lz, 1.0) == lz);
  CHECK_THROWS_AS(convexify(lz, 0.0), ValidationError);
  // ||f||_{X^(r)} = || |f|^r ||_X^{1/r}
  const StepDecreasing fs({0.3, 1.0, 2.5}, {4.0, 1.5, 0.2});
  for (double r : {0.5, 2.0}) {
    const RISpaceSpec c = convexify(lz, r);
    CHECK(quasi_norm(c, fs) == doctest::Approx(std::pow(quasi_norm(lz, fs.pow(r)), 1 / r)).epsilon(1e-8));
  }
}

TEST_CASE("Orlicz power function reproduces Lp") {
  OrliczFunction phi;
  phi.p = 2.0;
  const StepDecreasing fs({0.3, 1.0, 2.5}, {4.0, 1.5, 0.2});
  CHECK(quasi_norm(RISpaceSpec::orlicz(phi), fs) == doctest::Approx(quasi_norm(RISpaceSpec::lp(2.0), fs)).epsilon(1e-9));
  CHECK(delta2_constant(phi) == doctest::Approx(4.0));
}

TEST_CASE("alpha-convexity defect") {
  const std::vector<double> w(8, 1.0);
  const std::vector<FunctionTuple> single = {{{1, 0, 2, 0, 0, 3, 0, 1}}, {{0.5, 0.5, 0, 0, 0, 0, 0, 0}}};
  CHECK(alpha_convexity_defect(RISpaceSpec::lorentz(1.0, kInfinity), 1.0, single, w) == doctest::Approx(1.0));
  CHECK(alpha_convexity_defect(RISpaceSpec::lp(2.0), 1.0, single, w) == doctest::Approx(1.0));

  // cyclic harmonic spikes: each has weak-L1 norm 1, their sum is the constant H_8
  FunctionTuple spikes;
  for (std::size_t j = 0; j < 8; ++j) {
    std::vector<double> f(8);
    for (std::size_t k = 0; k < 8; ++k) f[k] = 1.0 / static_cast<double>((k + 8 - j) % 8 + 1);
    spikes.push_back(f);
  }
  const std::vector<FunctionTuple> tuples = {spikes};
  CHECK(alpha_convexity_defect(RISpaceSpec::lp(2.0), 1.0, tuples, w) <= 1.0 + 1e-12);
  CHECK(alpha_convexity_defect(RISpaceSpec::lorentz(1.0, kInfinity), 1.0, tuples, w) > 1.5);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(RISpaceSpec::lp(-1.0), ValidationError);
  CHECK_NOTHROW(RISpaceSpec::lorentz_zygmund(1.0, kInfinity, -2.0).validate());
}
