#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

#include <fockrel/errors.hpp>

namespace fockrel::tool {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Runs job(0..jobs-1) on a small worker pool. Results must be written to
// pre-sized slots inside the job; exceptions are captured per slot and the
// lowest-index one is rethrown, so the outcome is order-independent.
void run_indexed(int jobs, const std::function<void(int)>& job) {
  if (jobs <= 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  int workers = static_cast<int>(hw == 0 ? 2 : hw);
  if (workers > jobs) workers = jobs;

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= jobs) return;
      try {
        job(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

CheckOptions make_options(const RunConfig& config) {
  CheckOptions o;
  o.truncation = config.truncation;
  o.degree_budget = config.degree_budget;
  for (const auto& [name, value] : config.tolerances) {
    o.tol.set(name, value);
  }
  return o;
}

void enforce_truncation_cap(int truncation) {
  const int cap = max_truncation_cap();
  // Stability metrics re-run at truncation + 10, so that is the real peak.
  if (truncation + 10 > cap) {
    throw TruncationOverflow(
        "truncation " + std::to_string(truncation) + " needs headroom to " +
        std::to_string(truncation + 10) + ", above the configured cap " +
        std::to_string(cap) + " (raise FOCKREL_MAX_N to allow this)");
  }
}

// Per-sample RNG seeding: splitmix64 finalizer over (seed, check, sample)
// so each drawn parameter set is independent of evaluation order.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Draw {
  std::mt19937_64 eng;

  explicit Draw(std::uint64_t seed) : eng(seed) {}

  // Uniform in [0, 1) from the top 53 bits; identical on every platform,
  // unlike std::uniform_real_distribution.
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  double angle() { return 2.0 * kPi * unit(); }

  // Uniform on the closed disc of radius cap.
  Complex disc(double cap) {
    double r = cap * std::sqrt(unit());
    double t = angle();
    return Complex(r * std::cos(t), r * std::sin(t));
  }

  // Like disc, but magnitude bounded away from zero (>= cap / 4).
  Complex ring(double cap) {
    double r = cap * (0.25 + 0.75 * std::sqrt(unit()));
    double t = angle();
    return Complex(r * std::cos(t), r * std::sin(t));
  }

  Complex phase() {
    double t = angle();
    return Complex(std::cos(t), std::sin(t));
  }

  double real_ring(double cap) {
    double r = cap * (0.25 + 0.75 * std::sqrt(unit()));
    return unit() < 0.5 ? -r : r;
  }
};

// A valid conjugation: unimodular a, b orthogonal to it in the required
// sense, c of the forced magnitude with a free phase. |b| stays at half
// the cap: b enters the generator exponents on top of D, and the Taylor
// tail cut off at the truncation must stay well under the pairing
// tolerance.
ConjugationParams draw_conjugation(Draw& d, double cap) {
  double theta = d.angle();
  Complex a(std::cos(theta), std::sin(theta));
  double s = 0.5 * cap * (2.0 * d.unit() - 1.0);
  Complex half(std::cos(theta / 2.0), std::sin(theta / 2.0));
  Complex b = Complex(0.0, s) * half;
  double cm = std::exp(-0.5 * std::norm(b));
  Complex c = cm * d.phase();
  return ConjugationParams{a, b, c};
}

struct SweepSample {
  SymbolTriple triple;
  std::optional<ConjugationParams> conjugation;
};

// Families satisfying each check's hypotheses. Derived entries are set
// after the free ones, so a configured perturbation lands on top of a
// consistent parameter set and produces a designed violation.
SweepSample draw_sample(const std::string& check, int index, Draw& d,
                        double cap) {
  SweepSample s;
  SymbolTriple& t = s.triple;
  if (check == "multivalued_part" || check == "domain_closure") {
    t.m = index % 4;
    t.C = d.ring(cap);
    t.D = d.disc(cap);
    t.A = d.ring(cap);
    t.B = d.disc(cap);
    t.E = t.m >= 1 ? d.ring(cap) : d.disc(cap);
    t.F = d.disc(cap);
  } else if (check == "adjoint") {
    ConjugationParams p = draw_conjugation(d, cap);
    t.m = index % 4;
    t.C = d.ring(cap);
    t.D = d.disc(cap);
    t.A = d.ring(cap);
    t.B = d.disc(cap);
    t.E = p.a * t.A;
    t.F = p.a * t.B + p.b;
    s.conjugation = p;
  } else if (check == "c_selfadjoint") {
    ConjugationParams p = draw_conjugation(d, cap);
    t.m = index % 3;
    t.C = d.ring(cap);
    t.A = d.ring(cap);
    t.B = d.disc(cap);
    t.D = p.b + p.a * t.B - p.b * t.A;
    t.E = p.a * t.A;
    t.F = p.a * t.B + p.b;
    s.conjugation = p;
  } else if (check == "hermitian") {
    t.m = index % 3;
    t.A = d.real_ring(cap);
    t.B = d.disc(cap);
    t.D = std::conj(t.B);
    t.C = d.real_ring(cap);
    t.E = t.A;
    t.F = t.B;
  } else if (check == "unitary") {
    t.m = 0;
    t.A = d.phase();
    t.B = d.disc(cap);
    t.D = -t.A * std::conj(t.B);
    t.C = std::exp(-0.5 * std::norm(t.B)) * d.phase();
    t.E = Complex(0.0, 0.0);
    t.F = Complex(1.0, 0.0);
  } else if (check == "expansive") {
    t.m = index % 3;
    t.A = 2.0 * d.phase();
    t.C = d.ring(cap);
    t.D = d.disc(cap);
    t.B = d.disc(cap);
    t.E = t.m >= 1 ? d.ring(cap) : d.disc(cap);
    t.F = d.disc(cap);
  } else if (check == "boundedness") {
    // |A| <= 0.7 and shrunken B, D keep the norm's maximizing point well
    // inside the truncated basis, so the drift window is meaningful.
    t.m = index % 3;
    t.A = (0.25 + 0.45 * d.unit()) * d.phase();
    t.C = d.ring(cap);
    t.D = d.disc(0.75 * cap);
    t.B = d.disc(0.75 * cap);
    t.E = t.m >= 1 ? d.ring(cap) : d.disc(cap);
    t.F = d.disc(cap);
  } else {
    throw ConfigError("sweep: unknown check \"" + check + "\"");
  }
  return s;
}

void apply_perturbation(SymbolTriple& t,
                        const std::pair<std::string, Complex>& perturb) {
  const Complex delta = perturb.second;
  switch (perturb.first[0]) {
    case 'C': t.C += delta; break;
    case 'D': t.D += delta; break;
    case 'A': t.A += delta; break;
    case 'B': t.B += delta; break;
    case 'E': t.E += delta; break;
    case 'F': t.F += delta; break;
    default:
      throw ConfigError("sweep.perturb: unknown parameter " + perturb.first);
  }
}

} // namespace

int max_truncation_cap() {
  if (const char* env = std::getenv("FOCKREL_MAX_N")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 14 && value <= 100000) {
      return static_cast<int>(value);
    }
  }
  return 80;
}

std::vector<ValidationIssue> validate_config(const RunConfig& config) {
  std::vector<ValidationIssue> issues;
  for (std::size_t i = 0; i < config.triples.size(); ++i) {
    for (const auto& message : triple_violations(config.triples[i])) {
      issues.push_back({"triples[" + std::to_string(i) + "]", message});
    }
  }
  for (std::size_t i = 0; i < config.conjugations.size(); ++i) {
    const auto& p = config.conjugations[i];
    for (const auto& message : conjugation_violations(p.a, p.b, p.c)) {
      issues.push_back({"conjugations[" + std::to_string(i) + "]", message});
    }
  }
  return issues;
}

CheckReport dispatch_check(const std::string& name, const SymbolTriple& triple,
                           const ConjugationParams* conjugation,
                           const CheckOptions& options) {
  if (check_needs_conjugation(name) && conjugation == nullptr) {
    throw ConfigError("check \"" + name + "\" needs a conjugation");
  }
  try {
    if (name == "multivalued_part") return check_multivalued_part(triple, options);
    if (name == "domain_closure") return check_domain_closure(triple, options);
    if (name == "adjoint") {
      return check_adjoint_theorem(triple, *conjugation, options);
    }
    if (name == "c_selfadjoint") {
      return check_c_selfadjoint_theorem(triple, *conjugation, options);
    }
    if (name == "hermitian") return check_hermitian_theorem(triple, options);
    if (name == "unitary") return check_unitary_theorem(triple, options);
    if (name == "expansive") return check_lower_bound_expansive(triple, options);
    if (name == "boundedness") return check_boundedness(triple, options);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("check \"" + name + "\": " + e.what());
  }
  throw ConfigError("unknown check \"" + name + "\"");
}

std::vector<CheckReport> run_checks(const RunConfig& config) {
  enforce_truncation_cap(config.truncation);
  if (config.triples.empty()) {
    throw ConfigError("run: no triples configured");
  }
  std::vector<std::string> checks =
      config.checks.empty() ? known_checks() : config.checks;
  for (const auto& name : checks) {
    if (check_needs_conjugation(name) && config.conjugations.empty()) {
      throw ConfigError("check \"" + name +
                        "\" needs a conjugation, none configured");
    }
  }
  const CheckOptions options = make_options(config);

  struct Task {
    const SymbolTriple* triple;
    const ConjugationParams* conjugation;
    const std::string* check;
    std::string subject;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < config.triples.size(); ++i) {
    for (const auto& name : checks) {
      const ConjugationParams* p = nullptr;
      if (check_needs_conjugation(name)) {
        p = &config.conjugations[i % config.conjugations.size()];
      }
      tasks.push_back({&config.triples[i], p, &name,
                       "triples[" + std::to_string(i) + "]"});
    }
  }

  std::vector<CheckReport> reports(tasks.size());
  run_indexed(static_cast<int>(tasks.size()), [&](int i) {
    const Task& task = tasks[static_cast<std::size_t>(i)];
    try {
      reports[static_cast<std::size_t>(i)] =
          dispatch_check(*task.check, *task.triple, task.conjugation, options);
    } catch (const ConfigError& e) {
      throw ConfigError(task.subject + ": " + e.what());
    }
  });
  return reports;
}

std::vector<CheckReport> run_sweep(const RunConfig& config) {
  enforce_truncation_cap(config.truncation);
  std::vector<std::string> checks =
      config.checks.empty() ? known_checks() : config.checks;
  const CheckOptions options = make_options(config);
  const SweepConfig& sweep = config.sweep;

  struct Task {
    std::string check;
    std::uint64_t seed;
    int index;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < checks.size(); ++c) {
    // Seed by canonical check position, not list position, so the same
    // check yields the same samples whichever subset is requested.
    const auto& known = known_checks();
    std::size_t canonical =
        static_cast<std::size_t>(std::find(known.begin(), known.end(), checks[c]) -
                                 known.begin());
    for (int k = 0; k < sweep.count; ++k) {
      std::uint64_t seed = mix64(sweep.seed ^ mix64(canonical + 1) ^
                                 mix64(static_cast<std::uint64_t>(k) * 0x10001ULL));
      tasks.push_back({checks[c], seed, k});
    }
  }

  std::vector<CheckReport> reports(tasks.size());
  run_indexed(static_cast<int>(tasks.size()), [&](int i) {
    const Task& task = tasks[static_cast<std::size_t>(i)];
    Draw draw(task.seed);
    SweepSample sample =
        draw_sample(task.check, task.index, draw, sweep.magnitude_cap);
    if (sweep.perturb) {
      apply_perturbation(sample.triple, *sweep.perturb);
    }
    const ConjugationParams* p =
        sample.conjugation ? &*sample.conjugation : nullptr;
    try {
      reports[static_cast<std::size_t>(i)] =
          dispatch_check(task.check, sample.triple, p, options);
    } catch (const ConfigError& e) {
      throw ConfigError("sweep sample " + std::to_string(task.index) + ": " +
                        e.what());
    }
  });
  return reports;
}

std::map<std::string, std::pair<int, int>> summarize(
    const std::vector<CheckReport>& reports) {
  std::map<std::string, std::pair<int, int>> counts;
  for (const auto& r : reports) {
    auto& entry = counts[r.check_name];
    entry.second += 1;
    if (r.passed) entry.first += 1;
  }
  return counts;
}

} // namespace fockrel::tool
