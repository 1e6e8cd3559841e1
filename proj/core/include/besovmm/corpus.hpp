#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace besovmm {

class Space;

struct LabeledFunction {
  std::string label;
  std::vector<double> values;
};

using Corpus = std::vector<LabeledFunction>;

/// u = 1 on B(x0,rho), 2 - d/rho on B(x0,2rho) \ B(x0,rho), 0 elsewhere.
std::vector<double> tent_function(const Space& space, std::size_t x0, double rho = 1.0);
/// chi_{B(x0,2rho)} / rho, a Hajlasz gradient of the tent.
std::vector<double> tent_gradient(const Space& space, std::size_t x0, double rho = 1.0);

Corpus corpus_random_uniform(const Space& space, std::size_t count, std::uint64_t seed);
/// Indicators of random subsets (each point kept with probability 1/2, never empty).
Corpus corpus_indicators(const Space& space, std::size_t count, std::uint64_t seed);
Corpus corpus_tents(const Space& space, const std::vector<double>& scales = {1.0});
/// Random 1-Lipschitz functions min_i (a_i + d(x, c_i)) plus small uniform noise.
Corpus corpus_lipschitz_noise(const Space& space, std::size_t count, std::uint64_t seed, double noise = 0.05);

/// "random-uniform[:count]", "indicators[:count]", "tents[:scale,scale,...]",
/// "lipschitz-noise[:count]", "constants[:count]" (values -1, 0, 1, ...).
Corpus corpus_from_generator(const Space& space, const std::string& spec, std::uint64_t seed);

/// JSON array of arrays, or array of {"label":..,"values":[..]}.
Corpus corpus_from_json(const std::string& text, std::size_t expected_size);

}  // namespace besovmm
