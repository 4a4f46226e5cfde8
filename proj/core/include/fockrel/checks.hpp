#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockrel/wco.hpp"

namespace fockrel {

// Numerical verification harness: each check builds truncated relations
// from symbol data, measures how well a structural statement holds, and
// returns a self-contained report. Reports carry every measured quantity
// with its threshold so a failure can be read without rerunning.

enum class MetricSense {
  at_most,  // value <= tolerance required
  at_least, // value >= tolerance required
  info,     // diagnostic only, never gates the verdict
};

struct Metric {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  MetricSense sense = MetricSense::info;

  bool satisfied() const {
    switch (sense) {
      case MetricSense::at_most: return value <= tolerance;
      case MetricSense::at_least: return value >= tolerance;
      case MetricSense::info: return true;
    }
    return false;
  }
};

/// Every threshold used by the checks, overridable by name (the names are
/// the field names). These defaults are the pinned artifact policy.
struct Tolerances {
  double pairing = 1e-8;
  double graph_angle = 1e-3;
  double subspace_equal = 1e-8;
  double multivalued_angle = 1e-10;
  double exclusion_residual = 1e-3;
  double expansive_min = 1e-6;
  double expansive_stability = 0.2;
  double norm_drift = 0.05;
  double unitary_block = 1e-6;
  /// Designed violations must overshoot their threshold by this factor.
  double failure_factor = 10.0;

  /// Set a field by name; returns false for unknown names.
  bool set(std::string_view name, double value);
};

struct CheckOptions {
  int truncation = 40;
  /// Highest monomial degree fed to the generators; -1 means truncation/2.
  int degree_budget = -1;
  Tolerances tol;
  /// Grid for the pointwise boundedness estimate.
  double bounded_radius = 2.0;
  int bounded_grid = 21;
};

struct CheckReport {
  std::string check_name;
  /// Stable identifier of the verified statement, embedded verbatim in
  /// serialized reports.
  std::string claim;
  SymbolTriple triple;
  std::optional<ConjugationParams> conjugation;
  int truncation = 0;
  int degree_budget = 0;
  std::vector<Metric> metrics;
  std::vector<std::string> notes;
  bool passed = false;
  /// Headline threshold for quick scanning; the per-metric values govern.
  double tolerance_used = 0.0;
};

/// Probe points reused by every grid-based metric: 0, +-0.5, +-0.5i and
/// the four quarter-diagonal combinations.
const std::array<Complex, 9>& probe_grid();

/// The multivalued part of build_smax(t) is exactly the span of
/// e_0, ..., e_{m-1}.
CheckReport check_multivalued_part(const SymbolTriple& t, const CheckOptions& o);

/// The domain of build_smax(t) matches the budget-limited subspace of
/// functions vanishing to order m at w0, and kernel vectors of order
/// k < m stay measurably outside it.
CheckReport check_domain_closure(const SymbolTriple& t, const CheckOptions& o);

/// The closed-form adjoint generators pair correctly against the original
/// generators, and their graph sits inside the numerical adjoint graph.
CheckReport check_adjoint_theorem(const SymbolTriple& t,
                                  const ConjugationParams& p,
                                  const CheckOptions& o);

/// Classifier-positive triples satisfy the twisted pairing identity and
/// graph containment. Classifier-negative triples report failed (the
/// property does not hold), with a margin metric asserting the violation
/// clears failure_factor times the tolerance; pair with --expect-fail
/// when a failing family is intentional.
CheckReport check_c_selfadjoint_theorem(const SymbolTriple& t,
                                        const ConjugationParams& p,
                                        const CheckOptions& o);

/// Same for the untwisted pairing; classifier-positive triples are also
/// rechecked through the induced conjugation (conj(B)/B, 0, 1), or
/// (1, 0, 1) when B = 0. Classifier-negative triples report failed with
/// the violation-margin metric.
CheckReport check_hermitian_theorem(const SymbolTriple& t, const CheckOptions& o);

/// Classifier-positive symbols give an isometric leading block of the
/// weighted composition matrix. m >= 1 symbols report failed, carrying
/// the nontrivial-multivalued-part witness; other classifier-negative
/// symbols report failed with the block-deviation margin.
CheckReport check_unitary_theorem(const SymbolTriple& t, const CheckOptions& o);

/// Lower bound on the reduced gain of the graph (outputs modulo the
/// multivalued part): positive and stable under raising the truncation,
/// when |A| > 1. For |A| <= 1 the gain is reported as a diagnostic.
CheckReport check_lower_bound_expansive(const SymbolTriple& t,
                                        const CheckOptions& o);

/// Pointwise boundedness estimate plus stability of the relation seminorm
/// between truncation and truncation + 10. The drift gate applies only
/// when the domain condition (|A| < 1, or |A| = 1 with A conj(B) + D = 0)
/// holds; otherwise the norms are reported for inspection.
CheckReport check_boundedness(const SymbolTriple& t, const CheckOptions& o);

} // namespace fockrel
