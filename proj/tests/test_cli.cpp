#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <fockrel/errors.hpp>
#include <json.hpp>

#include "config.hpp"
#include "report.hpp"
#include "runner.hpp"

using fockrel::CheckOptions;
using fockrel::CheckReport;
using fockrel::Complex;
using fockrel::ConjugationParams;
using fockrel::MetricSense;
using fockrel::SymbolTriple;
using fockrel::tool::ConfigError;
using fockrel::tool::RunConfig;
using nlohmann::json;

namespace {

template <typename Fn>
void expect_config_error(Fn&& fn, const char* needle) {
  try {
    fn();
    FAIL_CHECK("expected ConfigError mentioning \"" << needle << "\"");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

SymbolTriple c_selfadjoint_triple(const ConjugationParams& p, Complex a_slope,
                                  Complex b_shift) {
  SymbolTriple t;
  t.A = a_slope;
  t.B = b_shift;
  t.D = p.b + p.a * t.B - p.b * t.A;
  t.E = p.a * t.A;
  t.F = p.a * t.B + p.b;
  t.m = 1;
  return t;
}

} // namespace

TEST_CASE("complex values are strict two-number arrays") {
  CHECK(fockrel::tool::parse_complex(json::array({1.5, -2.0}), "here") ==
        Complex(1.5, -2.0));
  expect_config_error(
      [] { fockrel::tool::parse_complex(json::array({1.0}), "spot"); },
      "spot: complex values are two-element arrays");
  expect_config_error(
      [] { fockrel::tool::parse_complex(json::array({"a", 2.0}), "spot"); },
      "two-element arrays");
  expect_config_error([] { fockrel::tool::parse_complex(json(3.0), "spot"); },
                      "two-element arrays");
  CHECK(fockrel::tool::complex_to_json(Complex(0.5, 0.25)) ==
        json::array({0.5, 0.25}));
}

TEST_CASE("config parsing applies defaults and rejects bad values") {
  const RunConfig defaults = fockrel::tool::parse_config(json::object());
  CHECK(defaults.truncation == 40);
  CHECK(defaults.degree_budget == -1);
  CHECK(defaults.triples.empty());
  CHECK(defaults.checks.empty());
  CHECK(defaults.sweep.count == 25);
  CHECK(defaults.sweep.seed == 7);
  CHECK(defaults.sweep.magnitude_cap == 1.0);
  CHECK_FALSE(defaults.sweep.perturb.has_value());

  expect_config_error(
      [] { fockrel::tool::parse_config(json{{"trunc", 10}}); },
      "config: unknown key \"trunc\"");
  expect_config_error(
      [] { fockrel::tool::parse_config(json{{"truncation", 3}}); },
      "config.truncation: must be at least 4");
  expect_config_error(
      [] {
        fockrel::tool::parse_config(
            json{{"truncation", 20}, {"degree_budget", 21}});
      },
      "config.degree_budget: must lie in [0, truncation]");
  expect_config_error(
      [] { fockrel::tool::parse_config(json{{"checks", json::array({"nope"})}}); },
      "unknown check \"nope\"");
  expect_config_error(
      [] {
        fockrel::tool::parse_config(
            json{{"tolerances", json{{"no_such", 1.0}}}});
      },
      "unknown tolerance \"no_such\"");
  expect_config_error(
      [] {
        fockrel::tool::parse_config(json{{"sweep", json{{"count", 0}}}});
      },
      "config.sweep.count: must be positive");
  expect_config_error(
      [] {
        fockrel::tool::parse_config(
            json{{"sweep", json{{"magnitude_cap", 2.5}}}});
      },
      "config.sweep.magnitude_cap: must lie in (0, 2]");
  expect_config_error(
      [] {
        fockrel::tool::parse_config(json{
            {"sweep",
             json{{"perturb", json{{"param", "X"},
                                   {"delta", json::array({0.1, 0.0})}}}}}});
      },
      "config.sweep.perturb.param: one of C, D, A, B, E, F");
  expect_config_error(
      [] {
        fockrel::tool::parse_config(
            json{{"sweep", json{{"perturb", json{{"param", "D"}}}}}});
      },
      "config.sweep.perturb: needs param and delta");
  expect_config_error(
      [] {
        fockrel::tool::parse_config(
            json{{"triples", json::array({json{{"C", json::array({1.0, 0.0})},
                                               {"Q", 1}}})}});
      },
      "config.triples[0]: unknown key \"Q\"");

  const RunConfig tuned = fockrel::tool::parse_config(
      json{{"tolerances", json{{"pairing", 1e-6}, {"graph_angle", 0.01}}}});
  CHECK(tuned.tolerances.at("pairing") == 1e-6);
}

TEST_CASE("config serialization round-trips through parsing") {
  json j;
  j["truncation"] = 30;
  j["degree_budget"] = 10;
  j["triples"] = json::array(
      {json{{"C", json::array({0.5, -0.5})}, {"m", 2}, {"E", json::array({1.0, 0.0})}}});
  j["conjugations"] =
      json::array({json{{"a", json::array({-1.0, 0.0})},
                        {"b", json::array({0.0, 0.0})},
                        {"c", json::array({1.0, 0.0})}}});
  j["checks"] = json::array({"adjoint", "unitary"});
  j["tolerances"] = json{{"pairing", 1e-7}};
  j["sweep"] = json{{"count", 5},
                    {"seed", 99},
                    {"magnitude_cap", 0.5},
                    {"perturb", json{{"param", "B"},
                                     {"delta", json::array({0.0, 0.1})}}}};

  const RunConfig c = fockrel::tool::parse_config(j);
  CHECK(c.triples.at(0).C == Complex(0.5, -0.5));
  CHECK(c.triples.at(0).m == 2);
  CHECK(c.sweep.perturb->first == "B");
  CHECK(c.sweep.perturb->second == Complex(0.0, 0.1));

  const json out = fockrel::tool::config_to_json(c);
  const RunConfig again = fockrel::tool::parse_config(out);
  CHECK(fockrel::tool::config_to_json(again).dump(2) == out.dump(2));
}

TEST_CASE("config files load with named errors") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();

  expect_config_error(
      [&] { fockrel::tool::load_config((dir / "fockrel_missing.json").string()); },
      "cannot open config file");

  const fs::path broken = dir / "fockrel_broken.json";
  std::ofstream(broken) << "{ not json";
  expect_config_error([&] { fockrel::tool::load_config(broken.string()); },
                      "not valid JSON");
  fs::remove(broken);

  const fs::path good = dir / "fockrel_good.json";
  std::ofstream(good) << R"({"truncation": 24, "checks": ["hermitian"]})";
  const RunConfig c = fockrel::tool::load_config(good.string());
  CHECK(c.truncation == 24);
  CHECK(c.checks == std::vector<std::string>{"hermitian"});
  fs::remove(good);
}

TEST_CASE("validation names the offending record") {
  RunConfig c;
  c.triples.push_back(SymbolTriple{});
  SymbolTriple bad;
  bad.C = Complex(0.0);
  c.triples.push_back(bad);
  c.conjugations.push_back(
      ConjugationParams{Complex(-1.0), Complex(0.0), Complex(0.0)});

  const auto issues = fockrel::tool::validate_config(c);
  REQUIRE(issues.size() == 2);
  CHECK(issues[0].subject == "triples[1]");
  CHECK(issues[0].message.find("weight constant C must be nonzero") !=
        std::string::npos);
  CHECK(issues[1].subject == "conjugations[0]");
  CHECK(issues[1].message.find("normalization |c|^2 e^{|b|^2} = 1") !=
        std::string::npos);
}

TEST_CASE("dispatch guards names, conjugations and invalid parameters") {
  const CheckOptions o;
  const SymbolTriple t;
  expect_config_error(
      [&] { fockrel::tool::dispatch_check("nope", t, nullptr, o); },
      "unknown check \"nope\"");
  expect_config_error(
      [&] { fockrel::tool::dispatch_check("adjoint", t, nullptr, o); },
      "needs a conjugation");

  const ConjugationParams invalid{Complex(2.0), Complex(0.0), Complex(1.0)};
  expect_config_error(
      [&] { fockrel::tool::dispatch_check("c_selfadjoint", t, &invalid, o); },
      "unimodularity");
}

TEST_CASE("run_checks pairs conjugations cyclically and in input order") {
  const ConjugationParams p0{Complex(1.0), Complex(0.0), Complex(1.0)};
  const ConjugationParams p1{Complex(0.0, 1.0), Complex(0.0), Complex(1.0)};

  RunConfig c;
  c.truncation = 20;
  c.checks = {"c_selfadjoint"};
  c.conjugations = {p0, p1};
  c.triples = {c_selfadjoint_triple(p0, Complex(0.8), Complex(0.4)),
               c_selfadjoint_triple(p1, Complex(0.8), Complex(0.5))};

  const auto reports = fockrel::tool::run_checks(c);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].conjugation->a == p0.a);
  CHECK(reports[1].conjugation->a == p1.a);
  CHECK(reports[0].passed);
  CHECK(reports[1].passed);

  RunConfig missing = c;
  missing.conjugations.clear();
  expect_config_error([&] { fockrel::tool::run_checks(missing); },
                      "needs a conjugation, none configured");

  RunConfig empty = c;
  empty.triples.clear();
  expect_config_error([&] { fockrel::tool::run_checks(empty); },
                      "no triples configured");
}

TEST_CASE("an empty check list expands to every known check in order") {
  const ConjugationParams p{Complex(1.0), Complex(0.0), Complex(1.0)};
  RunConfig c;
  c.truncation = 24;
  c.conjugations = {p};
  c.triples = {c_selfadjoint_triple(p, Complex(0.9), Complex(0.3))};

  const auto reports = fockrel::tool::run_checks(c);
  const auto& names = fockrel::tool::known_checks();
  REQUIRE(reports.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    CHECK(reports[i].check_name == names[i]);
  }

  const auto counts = fockrel::tool::summarize(reports);
  CHECK(counts.size() == names.size());
  for (const auto& [name, tally] : counts) {
    (void)name;
    CHECK(tally.second == 1);
  }
  // the unitary check must reject this genuinely multivalued relation
  CHECK(counts.at("unitary").first == 0);
  CHECK(counts.at("c_selfadjoint").first == 1);
}

TEST_CASE("truncation cap comes from the environment with a safe default") {
  unsetenv("FOCKREL_MAX_N");
  CHECK(fockrel::tool::max_truncation_cap() == 80);
  setenv("FOCKREL_MAX_N", "abc", 1);
  CHECK(fockrel::tool::max_truncation_cap() == 80);
  setenv("FOCKREL_MAX_N", "10", 1);
  CHECK(fockrel::tool::max_truncation_cap() == 80);
  setenv("FOCKREL_MAX_N", "40", 1);
  CHECK(fockrel::tool::max_truncation_cap() == 40);

  RunConfig c;
  c.truncation = 40;
  c.checks = {"multivalued_part"};
  c.triples = {SymbolTriple{}};
  CHECK_THROWS_AS(fockrel::tool::run_checks(c), fockrel::TruncationOverflow);

  c.truncation = 30;
  CHECK(fockrel::tool::run_checks(c).size() == 1);
  unsetenv("FOCKREL_MAX_N");
}

TEST_CASE("sweeps are deterministic and subset-stable") {
  RunConfig c;
  c.truncation = 28;
  c.checks = {"hermitian", "unitary"};
  c.sweep.count = 3;
  c.sweep.seed = 11;

  const auto first = fockrel::tool::run_sweep(c);
  const auto second = fockrel::tool::run_sweep(c);
  REQUIRE(first.size() == 6);
  CHECK(fockrel::tool::reports_to_json(first).dump() ==
        fockrel::tool::reports_to_json(second).dump());
  for (const auto& r : first) {
    CHECK(r.passed);
  }

  // a single-check sweep reproduces the samples of the combined sweep
  RunConfig solo = c;
  solo.checks = {"unitary"};
  const auto alone = fockrel::tool::run_sweep(solo);
  REQUIRE(alone.size() == 3);
  const std::vector<CheckReport> slice(first.begin() + 3, first.end());
  CHECK(fockrel::tool::reports_to_json(alone).dump() ==
        fockrel::tool::reports_to_json(slice).dump());
}

TEST_CASE("a designed perturbation fails every sample with a clean margin") {
  RunConfig c;
  c.truncation = 28;
  c.checks = {"hermitian"};
  c.sweep.count = 2;
  c.sweep.seed = 5;
  c.sweep.perturb = std::make_pair(std::string("A"), Complex(0.0, 0.1));

  const auto reports = fockrel::tool::run_sweep(c);
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    CHECK_FALSE(r.passed);
    bool margin_ok = false;
    for (const auto& m : r.metrics) {
      if (m.name == "pairing_violation_margin") margin_ok = m.satisfied();
    }
    CHECK(margin_ok);
  }
}

TEST_CASE("reports serialize with a stable schema") {
  CheckReport r;
  r.check_name = "demo";
  r.claim = "claim-id";
  r.truncation = 12;
  r.degree_budget = 6;
  r.metrics.push_back({"residual", 0.25, 0.5, MetricSense::at_most});
  r.metrics.push_back({"witness_dim", 2.0, 0.0, MetricSense::info});
  r.notes.push_back("for inspection");
  r.passed = true;
  r.tolerance_used = 0.5;

  const json j = fockrel::tool::report_to_json(r);
  CHECK(j.at("check") == "demo");
  CHECK(j.at("claim") == "claim-id");
  CHECK(j.at("parameters").at("conjugation").is_null());
  CHECK(j.at("parameters").at("triple").at("C") == json::array({1.0, 0.0}));
  CHECK(j.at("parameters").at("triple").at("m") == 0);
  CHECK(j.at("metrics").at(0).at("sense") == "at_most");
  CHECK(j.at("metrics").at(0).at("satisfied") == true);
  CHECK(j.at("metrics").at(1).at("sense") == "info");
  CHECK(j.at("passed") == true);

  r.conjugation = ConjugationParams{Complex(0.0, 1.0), Complex(0.0), Complex(1.0)};
  const json withc = fockrel::tool::report_to_json(r);
  CHECK(withc.at("parameters").at("conjugation").at("a") ==
        json::array({0.0, 1.0}));

  const std::string text = fockrel::tool::render_text({r});
  CHECK(text.find("PASS  demo  [claim-id]") != std::string::npos);
  CHECK(text.find("ok  residual = 0.25 <= 0.5") != std::string::npos);
  CHECK(text.find("note: for inspection") != std::string::npos);

  r.metrics[0].value = 0.75;
  r.passed = false;
  const std::string bad = fockrel::tool::render_text({r});
  CHECK(bad.find("FAIL  demo") != std::string::npos);
  CHECK(bad.find("BAD residual") != std::string::npos);
}
