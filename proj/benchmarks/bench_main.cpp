#include <benchmark/benchmark.h>

#include <random>

#include "besovmm/corpus.hpp"
#include "besovmm/embed.hpp"
#include "besovmm/rearrange.hpp"
#include "besovmm/smoothness.hpp"
#include "besovmm/space.hpp"

using namespace besovmm;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> f(n);
  for (auto& v : f) v = u(rng);
  return f;
}

void BM_Rearrangement(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> w(n, 0.5);
  const auto f = noise(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rearrangement(w, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rearrangement)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_DoublingConstant(benchmark::State& state) {
  const Space s = make_random_geometric(static_cast<std::size_t>(state.range(0)), 0.25, 3);
  for (auto _ : state) benchmark::DoNotOptimize(doubling_constant(s));
}
BENCHMARK(BM_DoublingConstant)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BesovExact(benchmark::State& state) {
  const Space s = make_random_geometric(static_cast<std::size_t>(state.range(0)), 0.25, 3);
  const auto f = noise(s.size(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(besov_seminorm(s, f, 0.5, 2.0, RISpaceSpec::lp(2.0), 1.0));
}
BENCHMARK(BM_BesovExact)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_HajlaszLp(benchmark::State& state) {
  const Space s = make_grid(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)));
  const auto f = noise(s.size(), 4);
  for (auto _ : state) benchmark::DoNotOptimize(hajlasz_seminorm_l1(s, f));
}
BENCHMARK(BM_HajlaszLp)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_KFunctionalLp(benchmark::State& state) {
  const Space s = make_grid(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)));
  const auto f = noise(s.size(), 5);
  for (auto _ : state) benchmark::DoNotOptimize(k_functional_l1(s, f, 1.0));
}
BENCHMARK(BM_KFunctionalLp)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_OscillationFunctional(benchmark::State& state) {
  const Space s = make_path(static_cast<std::size_t>(state.range(0)), 0.25, 0.25);
  const auto f = tent_function(s, s.size() / 2);
  const EmbeddingParams p{RISpaceSpec::lorentz_zygmund(1.5, 2.0, 0.5), 1.0, 0.5, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(oscillation_functional(s, f, p, 1.0));
}
BENCHMARK(BM_OscillationFunctional)->Arg(40)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
