#include "besovmm/io.hpp"

#include <cmath>
#include <cstdio>

#include "besovmm/errors.hpp"
#include "json.hpp"

namespace besovmm {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("spec is missing \"") + key + "\"");
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
  }
  throw ValidationError(std::string("spec field \"") + key + "\" must be a number or \"inf\"");
}

double number_or(const json& j, const char* key, double fallback) { return j.contains(key) ? number(j, key) : fallback; }

json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

PowerLog powerlog_from(const json& j) {
  if (!j.is_object()) throw ValidationError("weight preset must be an object");
  return {number_or(j, "coef", 1.0), number_or(j, "power", 0.0), number_or(j, "log_power", 0.0),
          number_or(j, "loglog_power", 0.0)};
}

json powerlog_to(const PowerLog& w) {
  return {{"coef", num(w.coef)}, {"power", num(w.power)}, {"log_power", num(w.log_power)},
          {"loglog_power", num(w.loglog_power)}};
}

RISpaceSpec spec_from(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ValidationError("spec must be an object with a \"family\" string");
  const auto fam = j.at("family").get<std::string>();
  RISpaceSpec s;
  if (fam == "lp") {
    s = RISpaceSpec::lp(number(j, "p"));
  } else if (fam == "lorentz") {
    s = RISpaceSpec::lorentz(number(j, "p"), number(j, "q"));
  } else if (fam == "lorentz_zygmund") {
    s = RISpaceSpec::lorentz_zygmund(number(j, "p"), number(j, "r"), number_or(j, "beta", 0.0));
  } else if (fam == "lambda_w") {
    if (!j.contains("w")) throw ValidationError("lambda_w spec needs \"w\"");
    s = RISpaceSpec::lambda_w(number(j, "q"), powerlog_from(j.at("w")));
  } else if (fam == "marcinkiewicz" || fam == "marcinkiewicz_tilde") {
    if (!j.contains("phi")) throw ValidationError(fam + " spec needs \"phi\"");
    const PowerLog phi = powerlog_from(j.at("phi"));
    s = fam == "marcinkiewicz" ? RISpaceSpec::marcinkiewicz(phi) : RISpaceSpec::marcinkiewicz_tilde(phi);
  } else if (fam == "orlicz") {
    if (!j.contains("Phi")) throw ValidationError("orlicz spec needs \"Phi\"");
    const json& y = j.at("Phi");
    OrliczFunction phi;
    const auto kind = y.value("kind", std::string("power"));
    if (kind == "power")
      phi.kind = OrliczFunction::Kind::power;
    else if (kind == "power_log")
      phi.kind = OrliczFunction::Kind::power_log;
    else
      throw ValidationError("unknown Orlicz kind '" + kind + "'");
    phi.p = number(y, "p");
    phi.b = number_or(y, "b", 0.0);
    s = RISpaceSpec::orlicz(phi);
  } else {
    throw ValidationError("unknown family '" + fam + "'");
  }
  const double rho = number_or(j, "convexify", 1.0);
  if (rho != 1.0) s = convexify(s, rho);
  s.validate();
  return s;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

RISpaceSpec spec_from_json(const std::string& text) { return spec_from(parse(text)); }

std::vector<RISpaceSpec> spec_list_from_json(const std::string& text) {
  const json j = parse(text);
  std::vector<RISpaceSpec> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(spec_from(e));
  } else {
    out.push_back(spec_from(j));
  }
  if (out.empty()) throw ValidationError("empty spec list");
  return out;
}

std::string spec_to_json(const RISpaceSpec& s) {
  json j;
  switch (s.family) {
    case Family::lp:
      j = {{"family", "lp"}, {"p", num(s.p)}};
      break;
    case Family::lorentz:
      j = {{"family", "lorentz"}, {"p", num(s.p)}, {"q", num(s.q)}};
      break;
    case Family::lorentz_zygmund:
      j = {{"family", "lorentz_zygmund"}, {"p", num(s.p)}, {"r", num(s.q)}, {"beta", num(s.beta)}};
      break;
    case Family::lambda_w:
      j = {{"family", "lambda_w"}, {"q", num(s.q)}, {"w", powerlog_to(s.weight)}};
      break;
    case Family::marcinkiewicz:
    case Family::marcinkiewicz_tilde:
      j = {{"family", s.family == Family::marcinkiewicz ? "marcinkiewicz" : "marcinkiewicz_tilde"},
           {"phi", powerlog_to(s.weight)}};
      break;
    case Family::orlicz:
      j = {{"family", "orlicz"},
           {"Phi",
            {{"kind", s.young.kind == OrliczFunction::Kind::power ? "power" : "power_log"},
             {"p", num(s.young.p)},
             {"b", num(s.young.b)}}}};
      break;
  }
  // stored spec already carries the convexification in its parameters where possible
  if (s.convexify_power != 1.0) j["convexify_stored"] = num(s.convexify_power);
  return j.dump();
}

std::string step_to_json(const StepDecreasing& f) {
  json j;
  j["breakpoints"] = std::vector<double>(f.breakpoints().begin(), f.breakpoints().end());
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  return j.dump();
}

StepDecreasing step_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    return StepDecreasing(j.at("breakpoints").get<std::vector<double>>(), j.at("values").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("step function JSON: ") + e.what());
  }
}

std::string modulus_profile_to_json(const ModulusProfile& p) {
  json j;
  j["radii"] = p.radii;
  j["values"] = p.values;
  j["tail_value"] = num(p.tail_value);
  return j.dump();
}

std::string k_bounds_to_json(const std::vector<KBounds>& rows) {
  json j = json::array();
  for (const auto& r : rows) {
    json e = {{"t", num(r.t)}, {"lower", num(r.lower)}, {"upper", num(r.upper)}};
    e["exact"] = r.exact ? num(*r.exact) : json(nullptr);
    j.push_back(e);
  }
  return j.dump();
}

std::string report_to_json(const EmbeddingReport& rep) {
  json j;
  j["theorem"] = rep.theorem;
  j["spec"] = rep.params.spec.describe();
  j["alpha"] = num(rep.params.alpha);
  j["s"] = num(rep.params.s);
  j["q"] = num(rep.params.q);
  j["upper_dimension"] = num(rep.upper_dimension);
  j["noncollapsing"] = num(rep.noncollapsing);
  j["empirical_constant"] = num(rep.empirical_constant);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"label", r.label}, {"lhs", num(r.lhs)}, {"rhs", num(r.rhs)}, {"ratio", num(r.ratio)}});
  j["rows"] = rows;
  return j.dump(2);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string report_to_csv(const EmbeddingReport& rep) {
  std::string out = "label,lhs,rhs,ratio\n";
  for (const auto& r : rep.rows)
    out += csv_field(r.label) + "," + format_number(r.lhs) + "," + format_number(r.rhs) + "," +
           format_number(r.ratio) + "\n";
  return out;
}

}  // namespace besovmm
