#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fockrel/wco.hpp"

namespace fockrel::tool {

/// Anything wrong with the run configuration (file, schema, values, flag
/// combinations). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  int count = 25;
  std::uint64_t seed = 7;
  double magnitude_cap = 1.0;
  /// Optional designed violation: parameter name (C, D, A, B, E or F) and
  /// a complex delta added to every derived triple.
  std::optional<std::pair<std::string, Complex>> perturb;
};

/// Parsed run configuration. Symbol and conjugation parameters are kept
/// as read; validity is checked by cmd_validate and by the builders, so
/// deliberately invalid records can be loaded and reported.
struct RunConfig {
  int truncation = 40;
  int degree_budget = -1; // -1 means truncation / 2
  std::vector<SymbolTriple> triples;
  std::vector<ConjugationParams> conjugations;
  std::vector<std::string> checks;
  std::map<std::string, double> tolerances;
  SweepConfig sweep;
};

/// All check names understood by the runner, in canonical order.
const std::vector<std::string>& known_checks();

/// Whether a check consumes a conjugation alongside each triple.
bool check_needs_conjugation(const std::string& name);

/// Complex numbers are serialized as two-element arrays [re, im].
Complex parse_complex(const nlohmann::json& j, const std::string& where);
nlohmann::json complex_to_json(Complex z);

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& c);

} // namespace fockrel::tool
