#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <fockrel/checks.hpp>

#include "config.hpp"

namespace fockrel::tool {

/// Largest truncation the CLI accepts, read from FOCKREL_MAX_N (default 80).
/// Checks internally probe up to truncation + 10, so the effective request
/// limit is this cap minus 10.
int max_truncation_cap();

/// One validation finding: which record, what is wrong with it.
struct ValidationIssue {
  std::string subject;
  std::string message;
};

/// Structural validation of every triple and conjugation in the config.
std::vector<ValidationIssue> validate_config(const RunConfig& config);

/// Runs one named check. `conjugation` may be null for checks that do not
/// take one. Unknown names raise ConfigError.
CheckReport dispatch_check(const std::string& name, const SymbolTriple& triple,
                           const ConjugationParams* conjugation,
                           const CheckOptions& options);

/// Runs the configured checks against the configured triples. Checks that
/// consume a conjugation are paired with conjugations[i % count] for
/// triple index i; requesting such a check with no conjugations available
/// raises ConfigError. Reports come back grouped by triple, in input order.
std::vector<CheckReport> run_checks(const RunConfig& config);

/// Randomized sweep: for each requested check, draws sweep.count parameter
/// sets from a family satisfying that check's hypotheses (seeded, hence
/// reproducible), applies the optional perturbation, and runs the check.
std::vector<CheckReport> run_sweep(const RunConfig& config);

/// Pass/total per check name.
std::map<std::string, std::pair<int, int>> summarize(
    const std::vector<CheckReport>& reports);

} // namespace fockrel::tool
