#include "fockrel/wco.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fockrel {

namespace {

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// |x - y| small relative to the size of the operands.
bool close(Complex x, Complex y, double tol) {
  return std::abs(x - y) <= tol * (1.0 + std::abs(x) + std::abs(y));
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

struct TaylorGeneratorSet {
  std::vector<std::pair<TaylorSeries, TaylorSeries>> pairs;
  std::vector<TaylorSeries> multivalued;
};

// Closed-form generators in the plain monomial basis. The inputs
// f_k(w) = (w - w0)^m w^k exhaust the forced-vanishing domain up to the
// degree budget; the identity A z + B - w0 = (A/E)(E z + F) cancels
// phi_sym exactly, leaving
//   g_k^(m)(z) = kappa e^{D z} (A z + B)^k,
// an entire function with kappa = C (A/E)^m (kappa = C / F^m when E = 0,
// where no vanishing is forced and f_k = w^k).
TaylorGeneratorSet taylor_generators(const SymbolTriple& t, int truncation,
                                     int degree_budget) {
  validate_triple(t);
  if (degree_budget < 0) {
    throw std::invalid_argument("smax generators: negative degree budget");
  }
  if (degree_budget + t.m > truncation) {
    throw std::invalid_argument("smax generators: degree_budget + m exceeds truncation");
  }

  const bool forced_vanishing = t.m >= 1 && t.E != Complex(0.0);
  Complex kappa = t.C;
  Complex w0(0.0);
  if (t.m >= 1) {
    if (forced_vanishing) {
      kappa = t.C * std::pow(t.A / t.E, t.m);
      w0 = t.B - t.A * t.F / t.E;
    } else {
      kappa = t.C / std::pow(t.F, t.m);
    }
  }
  if (!finite(kappa) || !finite(w0)) {
    throw TruncationOverflow("smax generators: symbol ratio exceeds representable range");
  }

  const TaylorSeries exp_core = TaylorSeries::exponential(t.D, truncation);
  const TaylorSeries root_factor =
      forced_vanishing ? TaylorSeries::affine_power(Complex(1.0), -w0, t.m)
                       : TaylorSeries::constant(Complex(1.0));

  TaylorGeneratorSet out;
  out.pairs.reserve(static_cast<std::size_t>(degree_budget) + 1);
  for (int k = 0; k <= degree_budget; ++k) {
    TaylorSeries f = root_factor * TaylorSeries::monomial(k);
    TaylorSeries gm = kappa * (TaylorSeries::affine_power(t.A, t.B, k) * exp_core);
    TaylorSeries g = gm.truncated(truncation - t.m).antiderivative(t.m);
    out.pairs.emplace_back(std::move(f), std::move(g));
  }
  for (int j = 0; j < t.m; ++j) {
    out.multivalued.push_back(TaylorSeries::monomial(j));
  }
  return out;
}

GeneratorSet to_fock(const TaylorGeneratorSet& taylor, int truncation) {
  GeneratorSet out;
  out.pairs.reserve(taylor.pairs.size());
  for (const auto& [f, g] : taylor.pairs) {
    out.pairs.push_back(
        {taylor_to_fock(f, truncation), taylor_to_fock(g, truncation)});
  }
  out.multivalued.reserve(taylor.multivalued.size());
  for (const auto& h : taylor.multivalued) {
    out.multivalued.push_back(taylor_to_fock(h, truncation));
  }
  return out;
}

LinearRelation assemble(const GeneratorSet& gens, int truncation) {
  return from_pairs(truncation + 1, gens.pairs, gens.multivalued);
}

} // namespace

std::vector<std::string> triple_violations(const SymbolTriple& t) {
  std::vector<std::string> out;
  if (!(finite(t.C) && finite(t.D) && finite(t.A) && finite(t.B) &&
        finite(t.E) && finite(t.F))) {
    out.push_back("symbol parameters must be finite");
    return out;
  }
  if (t.C == Complex(0.0)) {
    out.push_back("weight constant C must be nonzero");
  }
  if (t.A == Complex(0.0)) {
    out.push_back("composition slope A must be nonzero");
  }
  if (t.m < 0) {
    out.push_back("derivative order m must be nonnegative");
  }
  if (t.m >= 1 && t.E == Complex(0.0) && t.F == Complex(0.0)) {
    out.push_back("phi_sym requires (E, F) != (0, 0) when m >= 1");
  }
  return out;
}

void validate_triple(const SymbolTriple& t) {
  const auto violations = triple_violations(t);
  if (violations.empty()) return;
  std::string msg = "invalid symbol triple:";
  for (const auto& v : violations) {
    msg += " " + v + ";";
  }
  throw std::invalid_argument(msg);
}

std::vector<std::string> conjugation_violations(Complex a, Complex b, Complex c) {
  constexpr double tol = 1e-12;
  std::vector<std::string> out;
  if (!(finite(a) && finite(b) && finite(c))) {
    out.push_back("parameters must be finite");
    return out;
  }
  if (std::abs(std::abs(a) - 1.0) > tol) {
    out.push_back("unimodularity |a| = 1 violated (|a| = " +
                  std::to_string(std::abs(a)) + ")");
  }
  const Complex twist = std::conj(a) * b + std::conj(b);
  if (std::abs(twist) > tol) {
    out.push_back("phase condition conj(a) b + conj(b) = 0 violated (residual " +
                  fmt(twist) + ")");
  }
  const double normalization = std::norm(c) * std::exp(std::norm(b));
  if (std::abs(normalization - 1.0) > tol) {
    out.push_back("normalization |c|^2 e^{|b|^2} = 1 violated (got " +
                  std::to_string(normalization) + ")");
  }
  return out;
}

ConjugationParams validate_conjugation(Complex a, Complex b, Complex c) {
  const auto violations = conjugation_violations(a, b, c);
  if (!violations.empty()) {
    std::string msg = "invalid conjugation parameters:";
    for (const auto& v : violations) {
      msg += " " + v + ";";
    }
    throw std::invalid_argument(msg);
  }
  return ConjugationParams{a, b, c};
}

CMatrix wco_matrix(Complex C, Complex D, Complex A, Complex B, int truncation) {
  if (truncation < 0) {
    throw std::invalid_argument("wco_matrix: negative truncation");
  }
  const Eigen::Index n = truncation + 1;
  const TaylorSeries exp_core = TaylorSeries::exponential(D, truncation);
  CMatrix w(n, n);
  for (int j = 0; j <= truncation; ++j) {
    const TaylorSeries col =
        C * (TaylorSeries::affine_power(A, B, j) * exp_core);
    const FockVector fc = taylor_to_fock(col.truncated(truncation), truncation);
    w.col(j) = fc.coeffs / sqrt_factorial(j);
  }
  if (!w.allFinite()) {
    throw TruncationOverflow("wco_matrix: entries exceed representable range");
  }
  return w;
}

CMatrix conjugation_matrix(const ConjugationParams& p, int truncation) {
  validate_conjugation(p.a, p.b, p.c);
  return wco_matrix(p.c, p.b, p.a, p.b, truncation);
}

FockVector apply_conjugation(const CMatrix& m, const FockVector& v) {
  if (m.cols() != v.coeffs.size()) {
    throw std::invalid_argument("apply_conjugation: dimension mismatch");
  }
  return FockVector{m * v.coeffs.conjugate()};
}

GeneratorSet smax_generators(const SymbolTriple& t, int truncation,
                             int degree_budget) {
  return to_fock(taylor_generators(t, truncation, degree_budget), truncation);
}

LinearRelation build_smax(const SymbolTriple& t, int truncation,
                          int degree_budget) {
  return assemble(smax_generators(t, truncation, degree_budget), truncation);
}

bool in_adjoint_form(const SymbolTriple& t, const ConjugationParams& p,
                     double tol) {
  if (t.m == 0) {
    return true; // (E, F) never enters: the derivative factor is constant
  }
  const Complex e_req = p.a * t.A;
  const Complex f_req = p.a * t.B + p.b;
  return std::abs(t.E - e_req) <= tol * (1.0 + std::abs(e_req)) &&
         std::abs(t.F - f_req) <= tol * (1.0 + std::abs(f_req));
}

GeneratorSet smax_adjoint_generators(const SymbolTriple& t,
                                     const ConjugationParams& p,
                                     int truncation, int degree_budget) {
  validate_triple(t);
  validate_conjugation(p.a, p.b, p.c);
  if (!in_adjoint_form(t, p)) {
    throw std::invalid_argument(
        "smax_adjoint_generators: triple not in adjoint form (requires E = aA, F = aB + b)");
  }
  const Complex lambda = std::conj(p.b) / std::conj(p.a);

  SymbolTriple th;
  th.C = std::conj(t.C) / std::pow(std::conj(p.a), t.m);
  th.D = std::conj(t.B) + lambda;
  th.A = std::conj(t.A);
  th.B = std::conj(t.D);
  th.E = std::conj(t.A);
  th.F = std::conj(t.D);
  th.m = t.m;

  const TaylorGeneratorSet h_gens = taylor_generators(th, truncation, degree_budget);
  const TaylorSeries unwind = TaylorSeries::exponential(-lambda, truncation);

  TaylorGeneratorSet out;
  out.pairs.reserve(h_gens.pairs.size());
  for (const auto& [f, h] : h_gens.pairs) {
    out.pairs.emplace_back(f, (h * unwind).truncated(truncation));
  }
  out.multivalued.reserve(h_gens.multivalued.size());
  for (const auto& h : h_gens.multivalued) {
    out.multivalued.push_back((h * unwind).truncated(truncation));
  }
  return to_fock(out, truncation);
}

LinearRelation build_smax_adjoint(const SymbolTriple& t,
                                  const ConjugationParams& p, int truncation,
                                  int degree_budget) {
  return assemble(smax_adjoint_generators(t, p, truncation, degree_budget),
                  truncation);
}

RelationPair vartheta_pair(const SymbolTriple& t, const ConjugationParams& p,
                           Complex z, int k, int truncation) {
  validate_triple(t);
  validate_conjugation(p.a, p.b, p.c);
  if (!in_adjoint_form(t, p)) {
    throw std::invalid_argument("vartheta_pair: triple not in adjoint form");
  }
  if (k < t.m) {
    throw std::invalid_argument(
        "vartheta_pair: kernel order k below vanishing order m lies outside the domain");
  }
  const FockVector kernel = kernel_vector({z, p.a, p.b, k}, truncation);

  const Complex zbar = std::conj(z);
  const Complex scale = t.C * std::exp(t.B * zbar);
  if (!finite(scale)) {
    throw TruncationOverflow("vartheta_pair: weight magnitude exceeds representable range");
  }
  const TaylorSeries poly =
      TaylorSeries::affine_power(p.a * t.A, p.a * t.B + p.b, k - t.m);
  const TaylorSeries exp_core =
      TaylorSeries::exponential(t.A * zbar + t.D, truncation);
  const TaylorSeries theta = (scale * (poly * exp_core))
                                 .truncated(truncation - t.m)
                                 .antiderivative(t.m);
  return RelationPair{kernel, taylor_to_fock(theta, truncation)};
}

namespace {

ClassificationResult fail(std::string witness) {
  ClassificationResult r;
  r.kind = SymbolClass::none;
  r.witness = std::move(witness);
  return r;
}

} // namespace

ClassificationResult classify_hermitian(const SymbolTriple& t) {
  validate_triple(t);
  if (std::abs(t.A.imag()) > kClassifierTol * (1.0 + std::abs(t.A))) {
    return fail("A not real (A = " + fmt(t.A) + ")");
  }
  if (!close(t.D, std::conj(t.B), kClassifierTol)) {
    return fail("D != conj(B) (D = " + fmt(t.D) + ", conj(B) = " + fmt(std::conj(t.B)) + ")");
  }
  Complex induced = t.C;
  if (t.m >= 1) {
    if (std::abs(t.E) <= kClassifierTol * (1.0 + std::abs(t.F))) {
      return fail("phi_sym is constant while (A z + B)^m is not");
    }
    if (!close(t.A * t.F, t.B * t.E, kClassifierTol)) {
      return fail("phi_sym root differs from -B/A");
    }
    induced = t.C * std::pow(t.A / t.E, t.m);
  }
  if (std::abs(induced.imag()) > kClassifierTol * (1.0 + std::abs(induced))) {
    return fail("induced weight constant not real (got " + fmt(induced) + ")");
  }
  ClassificationResult r;
  r.kind = SymbolClass::hermitian;
  r.canonical_params = {{"A", t.A},
                        {"B", t.B},
                        {"D", t.D},
                        {"C_induced", induced}};
  return r;
}

ClassificationResult classify_c_selfadjoint(const SymbolTriple& t,
                                            const ConjugationParams& p) {
  validate_triple(t);
  validate_conjugation(p.a, p.b, p.c);
  const Complex d_required = p.b + p.a * t.B - p.b * t.A;
  if (!close(t.D, d_required, kClassifierTol)) {
    return fail("D != b + a B - b A (D = " + fmt(t.D) + ", required " +
                fmt(d_required) + ")");
  }
  Complex induced = t.C;
  if (t.m >= 1) {
    if (std::abs(t.E) <= kClassifierTol * (1.0 + std::abs(t.F))) {
      return fail("phi_sym is constant while (a A z + a B + b)^m is not");
    }
    if (!close(t.E * (p.a * t.B + p.b), t.F * (p.a * t.A), kClassifierTol)) {
      return fail("phi_sym root differs from -(a B + b)/(a A)");
    }
    induced = t.C * std::pow(p.a * t.A / t.E, t.m);
  }
  ClassificationResult r;
  r.kind = SymbolClass::c_selfadjoint;
  r.canonical_params = {{"D_required", d_required},
                        {"C_induced", induced},
                        {"fixed_point", -p.b / p.a}};
  return r;
}

ClassificationResult classify_unitary(const SymbolTriple& t) {
  validate_triple(t);
  if (t.m >= 1) {
    return fail("m >= 1: relation has a nontrivial multivalued part");
  }
  if (std::abs(std::abs(t.A) - 1.0) > kClassifierTol) {
    return fail("|A| != 1 (|A| = " + std::to_string(std::abs(t.A)) + ")");
  }
  if (!close(t.D, -t.A * std::conj(t.B), kClassifierTol)) {
    return fail("D != -A conj(B)");
  }
  const double required_mag = std::exp(-0.5 * std::norm(t.B));
  if (std::abs(std::abs(t.C) - required_mag) >
      kClassifierTol * (1.0 + required_mag)) {
    return fail("|C| != e^{-|B|^2/2} (|C| = " + std::to_string(std::abs(t.C)) + ")");
  }
  ClassificationResult r;
  r.kind = SymbolClass::unitary;
  r.canonical_params = {{"A", t.A},
                        {"B", t.B},
                        {"unimodular", t.C * std::exp(0.5 * std::norm(t.B))}};
  return r;
}

ClassificationResult classify_bounded_domain_condition(const SymbolTriple& t) {
  validate_triple(t);
  const double abs_a = std::abs(t.A);
  const Complex residual = t.A * std::conj(t.B) + t.D;
  ClassificationResult r;
  r.canonical_params = {{"abs_A", Complex(abs_a)},
                        {"residual", residual}};
  if (abs_a < 1.0 - kClassifierTol) {
    r.kind = SymbolClass::bounded_domain_condition;
    r.canonical_params["branch"] = Complex(1.0);
    return r;
  }
  if (std::abs(abs_a - 1.0) <= kClassifierTol) {
    if (std::abs(residual) <= kClassifierTol * (1.0 + std::abs(t.D))) {
      r.kind = SymbolClass::bounded_domain_condition;
      r.canonical_params["branch"] = Complex(2.0);
      return r;
    }
    auto f = fail("|A| = 1 but A conj(B) + D != 0 (residual " + fmt(residual) + ")");
    f.canonical_params = r.canonical_params;
    return f;
  }
  auto f = fail("|A| > 1 (|A| = " + std::to_string(abs_a) + ")");
  f.canonical_params = r.canonical_params;
  return f;
}

} // namespace fockrel
