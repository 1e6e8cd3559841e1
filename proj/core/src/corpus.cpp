#include "besovmm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "besovmm/errors.hpp"
#include "besovmm/random.hpp"
#include "besovmm/space.hpp"
#include "json.hpp"

namespace besovmm {

std::vector<double> tent_function(const Space& space, std::size_t x0, double rho) {
  if (x0 >= space.size()) throw ValidationError("tent center out of range");
  if (!(rho > 0.0)) throw DomainError("tent scale must be positive");
  std::vector<double> u(space.size(), 0.0);
  for (std::size_t y = 0; y < space.size(); ++y) {
    const double d = space.distance(x0, y);
    if (d < rho)
      u[y] = 1.0;
    else if (d < 2.0 * rho)
      u[y] = 2.0 - d / rho;
  }
  return u;
}

std::vector<double> tent_gradient(const Space& space, std::size_t x0, double rho) {
  if (x0 >= space.size()) throw ValidationError("tent center out of range");
  std::vector<double> g(space.size(), 0.0);
  for (std::size_t y = 0; y < space.size(); ++y)
    if (space.distance(x0, y) < 2.0 * rho) g[y] = 1.0 / rho;
  return g;
}

Corpus corpus_random_uniform(const Space& space, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  Corpus out;
  for (std::size_t k = 0; k < count; ++k) {
    LabeledFunction f{"uniform_" + std::to_string(k), std::vector<double>(space.size())};
    for (double& v : f.values) v = rng.uniform(-1.0, 1.0);
    out.push_back(std::move(f));
  }
  return out;
}

Corpus corpus_indicators(const Space& space, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  Corpus out;
  for (std::size_t k = 0; k < count; ++k) {
    LabeledFunction f{"indicator_" + std::to_string(k), std::vector<double>(space.size(), 0.0)};
    bool any = false;
    for (double& v : f.values)
      if (rng.uniform() < 0.5) v = 1.0, any = true;
    if (!any) f.values[rng.index(space.size())] = 1.0;
    out.push_back(std::move(f));
  }
  return out;
}

Corpus corpus_tents(const Space& space, const std::vector<double>& scales) {
  Corpus out;
  for (double rho : scales)
    for (std::size_t x = 0; x < space.size(); ++x) {
      std::ostringstream label;
      label << "tent_" << x << "_" << rho;
      out.push_back({label.str(), tent_function(space, x, rho)});
    }
  return out;
}

Corpus corpus_lipschitz_noise(const Space& space, std::size_t count, std::uint64_t seed, double noise) {
  Rng rng(seed);
  Corpus out;
  const std::size_t n = space.size();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t centers = 1 + rng.index(3);
    std::vector<std::size_t> c(centers);
    std::vector<double> a(centers);
    for (std::size_t i = 0; i < centers; ++i) {
      c[i] = rng.index(n);
      a[i] = rng.uniform(0.0, space.diameter());
    }
    LabeledFunction f{"lipschitz_" + std::to_string(k), std::vector<double>(n)};
    for (std::size_t x = 0; x < n; ++x) {
      double v = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < centers; ++i) v = std::min(v, a[i] + space.distance(x, c[i]));
      f.values[x] = v + noise * rng.uniform(-1.0, 1.0);
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("bad number '" + item + "' in corpus generator");
    }
  }
  return out;
}

}  // namespace

Corpus corpus_from_generator(const Space& space, const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto count = [&](std::size_t def) {
    if (arg.empty()) return def;
    const auto v = parse_list(arg);
    if (v.size() != 1 || !(v[0] >= 1.0)) throw ValidationError("corpus count must be a positive integer");
    return static_cast<std::size_t>(v[0]);
  };
  if (name == "random-uniform") return corpus_random_uniform(space, count(20), seed);
  if (name == "indicators") return corpus_indicators(space, count(20), seed);
  if (name == "lipschitz-noise") return corpus_lipschitz_noise(space, count(20), seed);
  if (name == "constants") {
    Corpus out;
    const std::size_t k = count(3);
    for (std::size_t i = 0; i < k; ++i) {
      const double c = static_cast<double>(i) - 1.0;
      out.push_back({"const_" + std::to_string(i), std::vector<double>(space.size(), c)});
    }
    return out;
  }
  if (name == "tents" || name == "tents-at-all-centers") {
    const auto scales = arg.empty() ? std::vector<double>{1.0} : parse_list(arg);
    return corpus_tents(space, scales);
  }
  throw ValidationError("unknown corpus generator '" + name + "'");
}

Corpus corpus_from_json(const std::string& text, std::size_t expected_size) {
  Corpus out;
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& arr = j.is_object() && j.contains("functions") ? j.at("functions") : j;
    if (!arr.is_array()) throw ValidationError("corpus JSON must be an array");
    std::size_t k = 0;
    for (const auto& item : arr) {
      LabeledFunction f;
      if (item.is_object()) {
        f.label = item.value("label", "f_" + std::to_string(k));
        f.values = item.at("values").get<std::vector<double>>();
      } else {
        f.label = "f_" + std::to_string(k);
        f.values = item.get<std::vector<double>>();
      }
      if (f.values.size() != expected_size)
        throw ValidationError("corpus function '" + f.label + "' has the wrong length");
      out.push_back(std::move(f));
      ++k;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("corpus JSON: ") + e.what());
  }
  return out;
}

}  // namespace besovmm
