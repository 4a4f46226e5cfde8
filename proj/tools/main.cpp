#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fockrel/errors.hpp>

#include "config.hpp"
#include "report.hpp"
#include "runner.hpp"

namespace tool = fockrel::tool;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitOverflow = 3;

struct CliOptions {
  std::string config_path;
  std::vector<std::string> checks;
  int truncation = -1;
  int budget = -2; // -2 means "not given"; -1 is a meaningful value
  std::vector<std::string> tol_overrides;
  std::string report_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int count = 0;
  std::vector<std::string> expect_fail;
};

void apply_overrides(tool::RunConfig& config, const CliOptions& cli) {
  if (cli.truncation >= 0) {
    if (cli.truncation < 4) {
      throw tool::ConfigError("--truncation: must be at least 4");
    }
    config.truncation = cli.truncation;
  }
  if (cli.budget != -2) {
    if (cli.budget != -1 &&
        (cli.budget < 0 || cli.budget > config.truncation)) {
      throw tool::ConfigError("--budget: must lie in [0, truncation]");
    }
    config.degree_budget = cli.budget;
  }
  if (!cli.checks.empty()) {
    const auto& known = tool::known_checks();
    for (const auto& name : cli.checks) {
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw tool::ConfigError("--check: unknown check \"" + name + "\"");
      }
    }
    config.checks = cli.checks;
  }
  for (const auto& entry : cli.tol_overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
      throw tool::ConfigError("--tol: expected <name>=<value>, got \"" + entry +
                              "\"");
    }
    const std::string name = entry.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(entry.substr(eq + 1), &used);
      if (used != entry.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw tool::ConfigError("--tol " + name + ": not a number");
    }
    fockrel::Tolerances probe;
    if (!probe.set(name, value)) {
      throw tool::ConfigError("--tol: unknown tolerance \"" + name + "\"");
    }
    config.tolerances[name] = value;
  }
  if (cli.seed_given) {
    config.sweep.seed = cli.seed;
  }
  if (cli.count > 0) {
    config.sweep.count = cli.count;
  }
}

nlohmann::json build_report_json(const tool::RunConfig& config,
                                 const std::vector<fockrel::CheckReport>& reports,
                                 bool include_seed) {
  nlohmann::json run;
  run["N"] = config.truncation;
  run["budget"] =
      config.degree_budget >= 0 ? config.degree_budget : config.truncation / 2;
  if (include_seed) {
    run["seed"] = config.sweep.seed;
  }
  int passed = 0;
  for (const auto& r : reports) {
    if (r.passed) ++passed;
  }
  nlohmann::json j;
  j["run"] = run;
  j["results"] = tool::reports_to_json(reports);
  j["summary"] = {{"passed", passed},
                  {"failed", static_cast<int>(reports.size()) - passed}};
  if (include_seed) {
    nlohmann::json rates;
    for (const auto& [name, counts] : tool::summarize(reports)) {
      rates[name] = {{"passed", counts.first}, {"total", counts.second}};
    }
    j["summary"]["rates"] = rates;
  }
  return j;
}

void emit(const std::string& text, const std::string& report_path) {
  if (report_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(report_path, std::ios::binary);
  if (!out) {
    throw tool::ConfigError("cannot open report file: " + report_path);
  }
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

int exit_code_for(const std::vector<fockrel::CheckReport>& reports,
                  const std::set<std::string>& expect_fail) {
  for (const auto& r : reports) {
    const bool expected_to_pass = expect_fail.count(r.check_name) == 0;
    if (r.passed != expected_to_pass) {
      return kExitCheckFailure;
    }
  }
  return kExitPass;
}

int cmd_validate(const CliOptions& cli) {
  const tool::RunConfig config = tool::load_config(cli.config_path);
  const auto issues = tool::validate_config(config);
  if (issues.empty()) {
    std::cout << "all records valid: " << config.triples.size()
              << " triple(s), " << config.conjugations.size()
              << " conjugation(s)\n";
    return kExitPass;
  }
  for (const auto& issue : issues) {
    std::cerr << issue.subject << ": " << issue.message << "\n";
  }
  return kExitConfigError;
}

int run_and_report(const CliOptions& cli, bool sweep_mode) {
  tool::RunConfig config = tool::load_config(cli.config_path);
  apply_overrides(config, cli);

  if (!sweep_mode) {
    const auto issues = tool::validate_config(config);
    if (!issues.empty()) {
      for (const auto& issue : issues) {
        std::cerr << issue.subject << ": " << issue.message << "\n";
      }
      return kExitConfigError;
    }
  }

  const std::vector<fockrel::CheckReport> reports =
      sweep_mode ? tool::run_sweep(config) : tool::run_checks(config);

  if (cli.format == "text") {
    std::string text = tool::render_text(reports);
    const auto counts = tool::summarize(reports);
    std::string tail;
    for (const auto& [name, c] : counts) {
      tail += name + ": " + std::to_string(c.first) + "/" +
              std::to_string(c.second) + " passed\n";
    }
    emit(text + tail, cli.report_path);
  } else {
    emit(build_report_json(config, reports, sweep_mode).dump(2),
         cli.report_path);
  }

  std::set<std::string> expect_fail(cli.expect_fail.begin(),
                                    cli.expect_fail.end());
  return exit_code_for(reports, expect_fail);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Fock-space relation checks"};
  app.require_subcommand(1);

  CliOptions cli;

  auto add_common = [&](CLI::App* cmd, bool with_run_flags) {
    cmd->add_option("--config", cli.config_path, "JSON run configuration")
        ->required();
    if (with_run_flags) {
      cmd->add_option("--check", cli.checks,
                      "Check name (repeatable; default: all)");
      cmd->add_option("--truncation", cli.truncation, "Basis truncation N");
      cmd->add_option("--budget", cli.budget,
                      "Generator degree budget (-1: N/2)");
      cmd->add_option("--tol", cli.tol_overrides,
                      "Tolerance override <name>=<value> (repeatable)");
      cmd->add_option("--report", cli.report_path,
                      "Report file (default: stdout)");
      cmd->add_option("--format", cli.format, "Report format: json|text")
          ->check(CLI::IsMember({"json", "text"}));
      cmd->add_option("--expect-fail", cli.expect_fail,
                      "Check expected to fail (repeatable)");
    }
  };

  CLI::App* validate = app.add_subcommand("validate", "Validate config records");
  add_common(validate, false);

  CLI::App* check = app.add_subcommand("check", "Run checks on configured triples");
  add_common(check, true);

  CLI::App* sweep = app.add_subcommand("sweep", "Run checks on sampled families");
  add_common(sweep, true);
  sweep->add_option("--count", cli.count, "Samples per check");
  auto* seed_opt = sweep->add_option("--seed", cli.seed, "Sweep RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e); // --help
    }
    app.exit(e);
    return kExitConfigError;
  }
  cli.seed_given = seed_opt->count() > 0;

  try {
    if (validate->parsed()) return cmd_validate(cli);
    if (check->parsed()) return run_and_report(cli, false);
    return run_and_report(cli, true);
  } catch (const fockrel::TruncationOverflow& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const tool::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
