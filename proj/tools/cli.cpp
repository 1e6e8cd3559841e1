#include "cli.hpp"

#include <fmt/core.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "besovmm/corpus.hpp"
#include "besovmm/embed.hpp"
#include "besovmm/errors.hpp"
#include "besovmm/io.hpp"
#include "besovmm/rearrange.hpp"
#include "besovmm/rispace.hpp"
#include "besovmm/space.hpp"
#include "json.hpp"

namespace besovmm::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

json jnum(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ValidationError("not a number: '" + s + "'");
  }
}

Space load_space_arg(const RunConfig& cfg) {
  if (cfg.space.empty()) throw ValidationError("--space is required");
  if (fs::exists(cfg.space)) return load_space(cfg.space);
  const auto parts = split(cfg.space, ':');
  auto arg = [&](std::size_t i, double def) { return parts.size() > i ? to_double(parts[i]) : def; };
  auto count = [&](std::size_t i) {
    if (parts.size() <= i) throw ValidationError("space generator '" + cfg.space + "' is missing a size");
    const double v = to_double(parts[i]);
    if (!(v >= 1.0) || v != std::floor(v)) throw ValidationError("space size must be a positive integer");
    return static_cast<std::size_t>(v);
  };
  if (parts[0] == "path") return make_path(count(1), arg(2, 1.0), arg(3, 1.0));
  if (parts[0] == "grid") return make_grid(count(1), count(2), arg(3, 1.0), arg(4, 1.0));
  if (parts[0] == "geometric") return make_random_geometric(count(1), arg(2, 0.25), cfg.seed, arg(3, 1.0));
  throw ValidationError("'" + cfg.space + "' is neither a file nor a space generator");
}

Corpus load_corpus(const RunConfig& cfg, const Space& space) {
  if (fs::exists(cfg.corpus)) return corpus_from_json(read_file(cfg.corpus), space.size());
  return corpus_from_generator(space, cfg.corpus, cfg.seed);
}

std::vector<RISpaceSpec> load_specs(const RunConfig& cfg) {
  const auto first = cfg.spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && (cfg.spec[first] == '{' || cfg.spec[first] == '['))
    return spec_list_from_json(cfg.spec);
  return spec_list_from_json(read_file(cfg.spec));
}

struct Output {
  json doc;
  std::string csv;
};

void write_outputs(const RunConfig& cfg, const std::string& name, const Output& o, RunResult& res) {
  fs::create_directories(cfg.out);
  const fs::path base = fs::path(cfg.out) / name;
  const std::string jpath = base.string() + ".json";
  const std::string cpath = base.string() + ".csv";
  {
    std::ofstream j(jpath, std::ios::binary);
    j << o.doc.dump(2) << "\n";
  }
  {
    std::ofstream c(cpath, std::ios::binary);
    c << o.csv;
  }
  if (!fs::exists(jpath) || !fs::exists(cpath)) throw std::runtime_error("cannot write into '" + cfg.out + "'");
  res.artifacts.push_back(jpath);
  res.artifacts.push_back(cpath);
}

json report_json(const EmbeddingReport& rep) { return json::parse(report_to_json(rep)); }

void append_report(Output& o, const EmbeddingReport& rep) {
  o.doc.push_back(report_json(rep));
  for (const auto& row : rep.rows)
    o.csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", rep.theorem, csv_field(rep.params.spec.describe()),
                         num(rep.params.alpha), num(rep.params.s), num(rep.params.q), csv_field(row.label),
                         num(row.lhs), num(row.rhs), num(row.ratio));
}

constexpr const char* kReportHeader = "theorem,spec,alpha,s,q,label,lhs,rhs,ratio\n";

template <class F>
void for_params(const RunConfig& cfg, const std::vector<RISpaceSpec>& specs, F&& f) {
  for (const auto& spec : specs)
    for (double a : cfg.alpha)
      for (double s : cfg.s)
        for (double q : cfg.q) f(EmbeddingParams{spec, a, s, q});
}

// Lorentz-Zygmund indices of a spec, if it is one of the LZ-type families.
std::tuple<double, double, double> lz_indices(const RISpaceSpec& spec) {
  if (spec.convexify_power != 1.0) throw PreconditionError("Lorentz-Zygmund check needs an unconvexified spec");
  switch (spec.family) {
    case Family::lp:
      return {spec.p, spec.p, 0.0};
    case Family::lorentz:
      return {spec.p, spec.q, 0.0};
    case Family::lorentz_zygmund:
      return {spec.p, spec.q, spec.beta};
    default:
      throw PreconditionError("Lorentz-Zygmund check needs an lp, lorentz or lorentz_zygmund spec");
  }
}

Output cmd_space_info(const RunConfig& cfg) {
  const Space space = load_space_arg(cfg);
  const SpaceDiagnostics d = diagnose(space);
  Output o;
  o.doc = {{"size", space.size()},
           {"doubling_constant", jnum(d.doubling_constant)},
           {"upper_dimension", jnum(d.upper_dimension)},
           {"noncollapsing", jnum(d.noncollapsing)},
           {"diameter", jnum(d.diameter)},
           {"min_distance", jnum(d.min_distance)},
           {"total_mass", jnum(d.total_mass)}};
  o.csv = "quantity,value\n";
  o.csv += "size," + std::to_string(space.size()) + "\n";
  o.csv += "doubling_constant," + num(d.doubling_constant) + "\n";
  o.csv += "upper_dimension," + num(d.upper_dimension) + "\n";
  o.csv += "noncollapsing," + num(d.noncollapsing) + "\n";
  o.csv += "diameter," + num(d.diameter) + "\n";
  o.csv += "min_distance," + num(d.min_distance) + "\n";
  o.csv += "total_mass," + num(d.total_mass) + "\n";
  return o;
}

Output cmd_norms(const RunConfig& cfg) {
  const Space space = load_space_arg(cfg);
  const Corpus corpus = load_corpus(cfg, space);
  const auto specs = load_specs(cfg);
  Output o;
  o.doc = json::array();
  o.csv = "label,spec,norm\n";
  for (const auto& fn : corpus) {
    const StepDecreasing fs = rearrangement(space, fn.values);
    for (const auto& spec : specs) {
      const double v = quasi_norm(spec, fs);
      o.doc.push_back({{"label", fn.label}, {"spec", spec.describe()}, {"norm", jnum(v)}});
      o.csv += fmt::format("{},{},{}\n", csv_field(fn.label), csv_field(spec.describe()), num(v));
    }
  }
  return o;
}

Output cmd_modulus(const RunConfig& cfg) {
  const Space space = load_space_arg(cfg);
  const Corpus corpus = load_corpus(cfg, space);
  const auto specs = load_specs(cfg);
  Output o;
  o.doc = json::array();
  o.csv = "label,spec,alpha,r,E\n";
  for (const auto& fn : corpus)
    for (const auto& spec : specs)
      for (double a : cfg.alpha) {
        const ModulusProfile prof = modulus_profile(space, level_profile(space, fn.values, spec, a), cfg.grid_ratio);
        o.doc.push_back({{"label", fn.label},
                         {"spec", spec.describe()},
                         {"alpha", jnum(a)},
                         {"profile", json::parse(modulus_profile_to_json(prof))}});
        for (std::size_t i = 0; i < prof.radii.size(); ++i)
          o.csv += fmt::format("{},{},{},{},{}\n", csv_field(fn.label), csv_field(spec.describe()), num(a),
                               num(prof.radii[i]), num(prof.values[i]));
      }
  return o;
}

Output cmd_besov(const RunConfig& cfg) {
  const Space space = load_space_arg(cfg);
  const Corpus corpus = load_corpus(cfg, space);
  const auto specs = load_specs(cfg);
  Output o;
  o.doc = json::array();
  o.csv = "label,spec,alpha,s,q,seminorm\n";
  for (const auto& fn : corpus)
    for_params(cfg, specs, [&](const EmbeddingParams& p) {
      BesovOptions opt;
      opt.grid_ratio = cfg.grid_ratio;
      const double v = besov_seminorm(space, fn.values, p.s, p.q, p.spec, p.alpha, opt);
      o.doc.push_back({{"label", fn.label},
                       {"spec", p.spec.describe()},
                       {"alpha", jnum(p.alpha)},
                       {"s", jnum(p.s)},
                       {"q", jnum(p.q)},
                       {"seminorm", jnum(v)}});
      o.csv += fmt::format("{},{},{},{},{},{}\n", csv_field(fn.label), csv_field(p.spec.describe()), num(p.alpha),
                           num(p.s), num(p.q), num(v));
    });
  return o;
}

Output cmd_kfun(const RunConfig& cfg) {
  const Space space = load_space_arg(cfg);
  const Corpus corpus = load_corpus(cfg, space);
  const auto specs = load_specs(cfg);
  std::vector<double> ts = cfg.t;
  if (ts.empty()) {
    const double lo = 0.5 * space.min_distance();
    const double hi = 4.0 * space.diameter();
    for (int i = 0; i < 12; ++i) ts.push_back(lo * std::pow(hi / lo, i / 11.0));
  }
  Output o;
  o.doc = json::array();
  o.csv = "label,spec,alpha,t,lower,upper,exact\n";
  for (const auto& fn : corpus)
    for (const auto& spec : specs)
      for (double a : cfg.alpha) {
        std::vector<KBounds> rows;
        for (double t : ts) {
          rows.push_back(k_bounds(space, fn.values, t, spec, a));
          const KBounds& b = rows.back();
          o.csv += fmt::format("{},{},{},{},{},{},{}\n", csv_field(fn.label), csv_field(spec.describe()), num(a),
                               num(t), num(b.lower), num(b.upper), b.exact ? num(*b.exact) : std::string());
        }
        o.doc.push_back({{"label", fn.label},
                         {"spec", spec.describe()},
                         {"alpha", jnum(a)},
                         {"bounds", json::parse(k_bounds_to_json(rows))}});
      }
  return o;
}

Output cmd_verify(const RunConfig& cfg) {
  const std::string& th = cfg.theorem;
  static const std::vector<std::string> known = {"k1",     "teolp",    "teointerpol", "teomo1",
                                                 "infinito", "pesos", "embteo",      "lorentzlog"};
  if (std::find(known.begin(), known.end(), th) == known.end())
    throw ValidationError("--theorem must be one of k1, teolp, teointerpol, teomo1, infinito, pesos, embteo, "
                          "lorentzlog");
  const Space space = load_space_arg(cfg);
  const Corpus corpus = load_corpus(cfg, space);
  Output o;
  o.doc = json::array();

  if (th == "teomo1") {
    o.csv = "label,alpha,constant,growth_constant,upper_dimension,grid_points\n";
    for (const auto& fn : corpus)
      for (double a : cfg.alpha) {
        MO1Options opt;
        opt.grid_points = cfg.mo1_grid;
        const MO1Result r = teoMO1_check(space, fn.values, a, opt);
        o.doc.push_back({{"label", fn.label},
                         {"alpha", jnum(a)},
                         {"constant", jnum(r.constant)},
                         {"growth_constant", jnum(r.growth_constant)},
                         {"upper_dimension", jnum(r.upper_dimension)},
                         {"grid_points", r.grid_points}});
        o.csv += fmt::format("{},{},{},{},{},{}\n", csv_field(fn.label), num(a), num(r.constant),
                             num(r.growth_constant), num(r.upper_dimension), r.grid_points);
      }
    return o;
  }

  const auto specs = load_specs(cfg);
  o.csv = kReportHeader;
  const double Q = upper_dimension(space);
  if (th == "teolp") {
    for (const auto& spec : specs) {
      if (spec.family != Family::lp || spec.convexify_power != 1.0)
        throw PreconditionError("teolp needs an lp spec");
      for (double s : cfg.s)
        for (double q : cfg.q) append_report(o, lp_embedding_report(space, corpus, spec.p, s, q));
    }
    return o;
  }
  if (th == "lorentzlog") {
    for (const auto& spec : specs) {
      const auto [p, r, beta] = lz_indices(spec);
      const RISpaceSpec lz = RISpaceSpec::lorentz_zygmund(p, r, beta);
      for (double s : cfg.s)
        for (double q : cfg.q) {
          const Regime reg = regime_classify(p, r, beta, s, q, Q);
          EmbeddingParams params{lz, reg.alpha_used, s, q};
          if (reg.case_id == RegimeCase::linf) {
            append_report(o, linf_embedding_check(space, corpus, params));
          } else {
            TargetParams tp;
            tp.base = params;
            tp.target = reg.target;
            append_report(o, target_norm_check(space, corpus, tp));
          }
        }
    }
    return o;
  }
  for_params(cfg, specs, [&](const EmbeddingParams& p) {
    if (th == "k1") {
      append_report(o, embedding_report(space, corpus, p));
    } else if (th == "teointerpol") {
      append_report(o, interpolation_report(space, corpus, p, cfg.grid_ratio));
    } else if (th == "infinito") {
      append_report(o, linf_embedding_check(space, corpus, p));
    } else if (th == "pesos") {
      TargetParams tp;
      tp.base = p;
      tp.oscillation_form = true;
      append_report(o, target_norm_check(space, corpus, tp));
    } else {  // embteo
      const PowerLog psi = m_integrand(p.spec, p.alpha, p.s, Q);
      if (m_zero_finite(psi, p.alpha, p.q)) {
        append_report(o, linf_embedding_check(space, corpus, p));
      } else {
        TargetParams tp;
        tp.base = p;
        append_report(o, target_norm_check(space, corpus, tp));
      }
    }
  });
  return o;
}

Output cmd_regimes(const RunConfig& cfg) {
  std::vector<double> Qs = cfg.Q;
  if (Qs.empty()) Qs.push_back(cfg.space.empty() ? 1.0 : upper_dimension(load_space_arg(cfg)));
  Output o;
  o.doc = json::array();
  o.csv = "p,r,beta,s,q,Q,case,item,alpha,power,log_power,loglog_power\n";
  for (double p : cfg.p)
    for (double r : cfg.r)
      for (double beta : cfg.beta)
        for (double s : cfg.s)
          for (double q : cfg.q)
            for (double Q : Qs) {
              const Regime reg = regime_classify(p, r, beta, s, q, Q);
              json e = {{"p", jnum(p)},         {"r", jnum(r)},         {"beta", jnum(beta)},
                        {"s", jnum(s)},         {"q", jnum(q)},         {"Q", jnum(Q)},
                        {"case", to_string(reg.case_id)}, {"item", reg.item}, {"alpha", jnum(reg.alpha_used)},
                        {"target", reg.target_description}};
              std::string tail = ",,";
              if (reg.target) {
                e["power"] = jnum(reg.target->power);
                e["log_power"] = jnum(reg.target->log_power);
                e["loglog_power"] = jnum(reg.target->loglog_power);
                tail = num(reg.target->power) + "," + num(reg.target->log_power) + "," +
                       num(reg.target->loglog_power);
              }
              o.doc.push_back(e);
              o.csv += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", num(p), num(r), num(beta), num(s), num(q),
                                   num(Q), to_string(reg.case_id), reg.item, num(reg.alpha_used), tail);
            }
  return o;
}

Output cmd_collapse(const RunConfig& cfg) {
  const Space space = load_space_arg(cfg);
  const Corpus corpus = load_corpus(cfg, space);
  const auto specs = load_specs(cfg);
  Output o;
  o.doc = json::array();
  o.csv = "spec,alpha,s,q,epsilon,noncollapsing,constant\n";
  for_params(cfg, specs, [&](const EmbeddingParams& p) {
    const auto pts = collapse_sweep(space, corpus, p, cfg.epsilon);
    json rows = json::array();
    for (const auto& c : pts) {
      rows.push_back({{"epsilon", jnum(c.epsilon)}, {"noncollapsing", jnum(c.noncollapsing)},
                      {"constant", jnum(c.constant)}});
      o.csv += fmt::format("{},{},{},{},{},{},{}\n", csv_field(p.spec.describe()), num(p.alpha), num(p.s),
                           num(p.q), num(c.epsilon), num(c.noncollapsing), num(c.constant));
    }
    o.doc.push_back({{"spec", p.spec.describe()},
                     {"alpha", jnum(p.alpha)},
                     {"s", jnum(p.s)},
                     {"q", jnum(p.q)},
                     {"sweep", rows}});
  });
  return o;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) continue;
    out.push_back(to_double(part));
  }
  if (out.empty()) throw ValidationError("empty list '" + text + "'");
  return out;
}

RunResult run(const std::string& command, const RunConfig& config) {
  RunResult res;
  static const std::vector<std::pair<std::string, std::function<Output(const RunConfig&)>>> table = {
      {"space-info", cmd_space_info}, {"norms", cmd_norms},     {"modulus", cmd_modulus},
      {"besov", cmd_besov},           {"kfun", cmd_kfun},       {"verify", cmd_verify},
      {"regimes", cmd_regimes},       {"collapse-sweep", cmd_collapse}};
  const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == command; });
  if (it == table.end()) {
    res.exit_code = kUsage;
    res.message = "unknown command '" + command + "'";
    return res;
  }
  try {
    const Output o = it->second(config);
    const std::string name = command == "verify" ? "verify-" + config.theorem : command;
    write_outputs(config, name, o, res);
  } catch (const PreconditionError& e) {
    res.exit_code = kPrecondition;
    res.message = std::string("precondition refused: ") + e.what();
  } catch (const UnsupportedError& e) {
    res.exit_code = kPrecondition;
    res.message = std::string("unsupported: ") + e.what();
  } catch (const ValidationError& e) {
    res.exit_code = kUsage;
    res.message = std::string("invalid input: ") + e.what();
  } catch (const DomainError& e) {
    res.exit_code = kUsage;
    res.message = std::string("invalid parameter: ") + e.what();
  } catch (const SolverError& e) {
    res.exit_code = kEvaluation;
    res.message = std::string("solver failure: ") + e.what() + " (instance: " + e.dump_path() + ")";
  } catch (const EvaluationError& e) {
    res.exit_code = kEvaluation;
    res.message = std::string("evaluation failure: ") + e.what();
  } catch (const InconsistencyError& e) {
    res.exit_code = kEvaluation;
    res.message = std::string("inconsistent report: ") + e.what();
  } catch (const std::exception& e) {
    res.exit_code = kFailure;
    res.message = e.what();
  }
  return res;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Oscillation, Besov and K-functional calculus on finite metric measure spaces"};
  app.set_config("--config", "", "TOML/INI file with option values");
  RunConfig cfg;
  std::string command;
  std::string alpha, s, q, t, eps, p, r, beta, Q;
  app.add_option("command", command,
                 "space-info | norms | modulus | besov | kfun | verify | regimes | collapse-sweep")
      ->required();
  app.add_option("--space", cfg.space, "space JSON file or generator (path:n, grid:nx:ny, geometric:n:radius)");
  app.add_option("--corpus", cfg.corpus, "corpus JSON file or generator")->capture_default_str();
  app.add_option("--spec", cfg.spec, "spec JSON (object or array) or a file holding it")->capture_default_str();
  app.add_option("--alpha", alpha, "comma-separated alpha values");
  app.add_option("--s", s, "comma-separated smoothness values");
  app.add_option("--q", q, "comma-separated q values (inf allowed)");
  app.add_option("--t", t, "comma-separated t values for kfun");
  app.add_option("--epsilon", eps, "comma-separated weight scales for collapse-sweep");
  app.add_option("--p", p, "regimes: p values");
  app.add_option("--r", r, "regimes: r values");
  app.add_option("--beta", beta, "regimes: beta values");
  app.add_option("--Q", Q, "regimes: upper dimensions");
  app.add_option("--theorem", cfg.theorem, "k1 | teolp | teointerpol | teomo1 | infinito | pesos | embteo | lorentzlog");
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--seed", cfg.seed, "generator seed")->capture_default_str();
  app.add_option("--grid-ratio", cfg.grid_ratio, "radius grid ratio")->capture_default_str();
  app.add_option("--mo1-grid", cfg.mo1_grid, "t-grid size for teomo1")->capture_default_str();
  try {
    app.parse(argc, argv);
    if (!alpha.empty()) cfg.alpha = parse_list(alpha);
    if (!s.empty()) cfg.s = parse_list(s);
    if (!q.empty()) cfg.q = parse_list(q);
    if (!t.empty()) cfg.t = parse_list(t);
    if (!eps.empty()) cfg.epsilon = parse_list(eps);
    if (!p.empty()) cfg.p = parse_list(p);
    if (!r.empty()) cfg.r = parse_list(r);
    if (!beta.empty()) cfg.beta = parse_list(beta);
    if (!Q.empty()) cfg.Q = parse_list(Q);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  }
  if (command == "verify" && cfg.theorem.empty()) {
    std::cerr << "verify needs --theorem\n";
    return kUsage;
  }
  const RunResult res = run(command, cfg);
  if (res.exit_code != kOk) {
    std::cerr << res.message << "\n";
  } else {
    for (const auto& a : res.artifacts) std::cout << a << "\n";
  }
  return res.exit_code;
}

}  // namespace besovmm::cli
