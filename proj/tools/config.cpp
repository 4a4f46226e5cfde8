#include "config.hpp"

#include <algorithm>
#include <fstream>

#include <fockrel/checks.hpp>

namespace fockrel::tool {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
  }
}

double parse_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ConfigError(where + ": expected a number");
  }
  return j.get<double>();
}

int parse_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw ConfigError(where + ": expected an integer");
  }
  return j.get<int>();
}

SymbolTriple parse_triple(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  require_keys(j, {"C", "D", "A", "B", "E", "F", "m"}, where);
  SymbolTriple t;
  if (j.contains("C")) t.C = parse_complex(j.at("C"), where + ".C");
  if (j.contains("D")) t.D = parse_complex(j.at("D"), where + ".D");
  if (j.contains("A")) t.A = parse_complex(j.at("A"), where + ".A");
  if (j.contains("B")) t.B = parse_complex(j.at("B"), where + ".B");
  if (j.contains("E")) t.E = parse_complex(j.at("E"), where + ".E");
  if (j.contains("F")) t.F = parse_complex(j.at("F"), where + ".F");
  if (j.contains("m")) t.m = parse_int(j.at("m"), where + ".m");
  return t;
}

ConjugationParams parse_conjugation(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  require_keys(j, {"a", "b", "c"}, where);
  ConjugationParams p;
  if (j.contains("a")) p.a = parse_complex(j.at("a"), where + ".a");
  if (j.contains("b")) p.b = parse_complex(j.at("b"), where + ".b");
  if (j.contains("c")) p.c = parse_complex(j.at("c"), where + ".c");
  return p;
}

json triple_to_json(const SymbolTriple& t) {
  return json{{"C", complex_to_json(t.C)}, {"D", complex_to_json(t.D)},
              {"A", complex_to_json(t.A)}, {"B", complex_to_json(t.B)},
              {"E", complex_to_json(t.E)}, {"F", complex_to_json(t.F)},
              {"m", t.m}};
}

json conjugation_to_json(const ConjugationParams& p) {
  return json{{"a", complex_to_json(p.a)},
              {"b", complex_to_json(p.b)},
              {"c", complex_to_json(p.c)}};
}

} // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "multivalued_part", "domain_closure", "adjoint",   "c_selfadjoint",
      "hermitian",        "unitary",        "expansive", "boundedness"};
  return names;
}

bool check_needs_conjugation(const std::string& name) {
  return name == "adjoint" || name == "c_selfadjoint";
}

Complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + ": complex values are two-element arrays [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

nlohmann::json complex_to_json(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  require_keys(j,
               {"truncation", "degree_budget", "triples", "conjugations",
                "checks", "tolerances", "sweep"},
               "config");
  RunConfig c;
  if (j.contains("truncation")) {
    c.truncation = parse_int(j.at("truncation"), "config.truncation");
  }
  if (c.truncation < 4) {
    throw ConfigError("config.truncation: must be at least 4");
  }
  if (j.contains("degree_budget")) {
    c.degree_budget = parse_int(j.at("degree_budget"), "config.degree_budget");
    if (c.degree_budget < 0 || c.degree_budget > c.truncation) {
      throw ConfigError("config.degree_budget: must lie in [0, truncation]");
    }
  }
  if (j.contains("triples")) {
    if (!j.at("triples").is_array()) {
      throw ConfigError("config.triples: expected an array");
    }
    int index = 0;
    for (const auto& item : j.at("triples")) {
      c.triples.push_back(
          parse_triple(item, "config.triples[" + std::to_string(index++) + "]"));
    }
  }
  if (j.contains("conjugations")) {
    if (!j.at("conjugations").is_array()) {
      throw ConfigError("config.conjugations: expected an array");
    }
    int index = 0;
    for (const auto& item : j.at("conjugations")) {
      c.conjugations.push_back(parse_conjugation(
          item, "config.conjugations[" + std::to_string(index++) + "]"));
    }
  }
  if (j.contains("checks")) {
    if (!j.at("checks").is_array()) {
      throw ConfigError("config.checks: expected an array of check names");
    }
    for (const auto& item : j.at("checks")) {
      if (!item.is_string()) {
        throw ConfigError("config.checks: expected strings");
      }
      const std::string name = item.get<std::string>();
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ConfigError("config.checks: unknown check \"" + name + "\"");
      }
      c.checks.push_back(name);
    }
  }
  if (j.contains("tolerances")) {
    if (!j.at("tolerances").is_object()) {
      throw ConfigError("config.tolerances: expected an object of name -> value");
    }
    for (const auto& [key, value] : j.at("tolerances").items()) {
      c.tolerances[key] = parse_number(value, "config.tolerances." + key);
    }
    Tolerances probe;
    for (const auto& [key, value] : c.tolerances) {
      if (!probe.set(key, value)) {
        throw ConfigError("config.tolerances: unknown tolerance \"" + key + "\"");
      }
    }
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    if (!s.is_object()) {
      throw ConfigError("config.sweep: expected an object");
    }
    require_keys(s, {"count", "seed", "magnitude_cap", "perturb"}, "config.sweep");
    if (s.contains("count")) {
      c.sweep.count = parse_int(s.at("count"), "config.sweep.count");
      if (c.sweep.count < 1) {
        throw ConfigError("config.sweep.count: must be positive");
      }
    }
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer()) {
        throw ConfigError("config.sweep.seed: expected an integer");
      }
      c.sweep.seed = s.at("seed").get<std::uint64_t>();
    }
    if (s.contains("magnitude_cap")) {
      c.sweep.magnitude_cap =
          parse_number(s.at("magnitude_cap"), "config.sweep.magnitude_cap");
      if (c.sweep.magnitude_cap <= 0.0 || c.sweep.magnitude_cap > 2.0) {
        throw ConfigError("config.sweep.magnitude_cap: must lie in (0, 2]");
      }
    }
    if (s.contains("perturb")) {
      const auto& p = s.at("perturb");
      if (!p.is_object()) {
        throw ConfigError("config.sweep.perturb: expected an object");
      }
      require_keys(p, {"param", "delta"}, "config.sweep.perturb");
      if (!p.contains("param") || !p.contains("delta")) {
        throw ConfigError("config.sweep.perturb: needs param and delta");
      }
      const std::string param = p.at("param").get<std::string>();
      const std::string allowed = "CDABEF";
      if (param.size() != 1 || allowed.find(param) == std::string::npos) {
        throw ConfigError("config.sweep.perturb.param: one of C, D, A, B, E, F");
      }
      c.sweep.perturb = {param,
                         parse_complex(p.at("delta"), "config.sweep.perturb.delta")};
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const RunConfig& c) {
  json j;
  j["truncation"] = c.truncation;
  if (c.degree_budget >= 0) {
    j["degree_budget"] = c.degree_budget;
  }
  j["triples"] = json::array();
  for (const auto& t : c.triples) {
    j["triples"].push_back(triple_to_json(t));
  }
  j["conjugations"] = json::array();
  for (const auto& p : c.conjugations) {
    j["conjugations"].push_back(conjugation_to_json(p));
  }
  j["checks"] = c.checks;
  if (!c.tolerances.empty()) {
    j["tolerances"] = c.tolerances;
  }
  json s;
  s["count"] = c.sweep.count;
  s["seed"] = c.sweep.seed;
  s["magnitude_cap"] = c.sweep.magnitude_cap;
  if (c.sweep.perturb) {
    s["perturb"] = {{"param", c.sweep.perturb->first},
                    {"delta", complex_to_json(c.sweep.perturb->second)}};
  }
  j["sweep"] = s;
  return j;
}

} // namespace fockrel::tool
