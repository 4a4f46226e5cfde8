#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockrel/relation.hpp"

namespace fockrel {

// Symbols for weighted composition relations. A triple encodes the data
//
//   psi(z)      = C e^{D z}          (weight)
//   phi(z)      = A z + B            (composition)
//   phi_sym(z)  = (E z + F)^m        (right-hand side factor)
//
// and the relation S pairs f with g whenever psi * (f o phi) equals
// phi_sym * g^(m). For m = 0 this is the ordinary weighted composition
// operator; for m >= 1 the m-fold derivative makes S genuinely
// multi-valued, with A(0) spanned by the polynomials of degree < m.

struct SymbolTriple {
  Complex C = Complex(1.0);
  Complex D = Complex(0.0);
  Complex A = Complex(1.0);
  Complex B = Complex(0.0);
  Complex E = Complex(0.0);
  Complex F = Complex(1.0);
  int m = 0;
};

/// Human-readable list of violated symbol invariants (empty when valid):
/// C != 0, A != 0, m >= 0, and (E, F) != (0, 0) whenever m >= 1.
std::vector<std::string> triple_violations(const SymbolTriple& t);

/// Throws std::invalid_argument listing every violated invariant.
void validate_triple(const SymbolTriple& t);

/// Parameters (a, b, c) of the antilinear map
///   (C f)(z) = c e^{b z} conj(f(conj(a z + b))),
/// which is a conjugation (antilinear, involutive, isometric) exactly when
/// |a| = 1, conj(a) b + conj(b) = 0, and |c|^2 e^{|b|^2} = 1.
struct ConjugationParams {
  Complex a = Complex(1.0);
  Complex b = Complex(0.0);
  Complex c = Complex(1.0);
};

/// One entry per violated clause, each naming the condition (empty when
/// valid). Checked with absolute tolerance 1e-12.
std::vector<std::string> conjugation_violations(Complex a, Complex b, Complex c);

/// Validates and returns the parameters; throws std::invalid_argument
/// naming every violated clause otherwise.
ConjugationParams validate_conjugation(Complex a, Complex b, Complex c);

/// Matrix of the weighted composition map g -> C e^{D z} g(A z + B) on the
/// truncated space, in the orthonormal basis. Entry (i, j) is
///   sqrt(i!/j!) * C * sum_{l <= min(i,j)} binom(j,l) A^l B^{j-l} D^{i-l} / (i-l)!.
CMatrix wco_matrix(Complex C, Complex D, Complex A, Complex B, int truncation);

/// Matrix part of the conjugation: the linear map g -> c e^{b z} g(a z + b).
/// The conjugation itself acts antilinearly as v -> M conj(v).
CMatrix conjugation_matrix(const ConjugationParams& p, int truncation);

/// Apply the antilinear conjugation with matrix part m to a vector.
FockVector apply_conjugation(const CMatrix& m, const FockVector& v);

/// Generators of a relation before orthonormalization: explicit pairs plus
/// pure output directions attached to the zero input.
struct GeneratorSet {
  std::vector<RelationPair> pairs;
  std::vector<FockVector> multivalued;
};

/// Generator pairs (f_k, g_k) for k = 0..degree_budget, plus the
/// multivalued directions (0, z^j) for j < m. The inputs are
/// f_k(w) = (w - w0)^m w^k with w0 = B - A F / E when E != 0 (plain
/// monomials when E = 0 or m = 0); each g_k is the m-fold antiderivative,
/// with vanishing jets at 0, of the entire function psi * (f_k o phi) / phi_sym.
GeneratorSet smax_generators(const SymbolTriple& t, int truncation,
                             int degree_budget);

/// The relation spanned by smax_generators. Requires degree_budget + m to
/// stay within the truncation.
LinearRelation build_smax(const SymbolTriple& t, int truncation,
                          int degree_budget);

/// Whether t is in adjoint form for p: E = a A and F = a B + b.
bool in_adjoint_form(const SymbolTriple& t, const ConjugationParams& p,
                     double tol = 1e-9);

/// Generators of the adjoint relation of build_smax(t), for a triple in
/// adjoint form. Derived from the closed-form adjoint symbols
/// psi_hat = conj(C) e^{conj(B) z}, phi_hat = conj(A) z + conj(D),
/// phi_hat_sym = (conj(A) z + conj(D))^m: substituting h = e^{lambda z} g
/// with lambda = conj(b)/conj(a) turns the adjoint equation into a plain
/// symbol-triple relation for h, and g = e^{-lambda z} h maps its
/// generators back.
GeneratorSet smax_adjoint_generators(const SymbolTriple& t,
                                     const ConjugationParams& p,
                                     int truncation, int degree_budget);

LinearRelation build_smax_adjoint(const SymbolTriple& t,
                                  const ConjugationParams& p, int truncation,
                                  int degree_budget);

/// The pair (K, vartheta) in the graph of build_smax(t): K is the kernel
/// vector kernel(z, a, b, k) and vartheta is the m-fold canonical
/// antiderivative of C e^{B conj(z)} (aA x + aB + b)^{k-m} e^{x (A conj(z) + D)}.
/// Requires k >= m (kernels of lower order lie outside the domain) and t
/// in adjoint form for p.
RelationPair vartheta_pair(const SymbolTriple& t, const ConjugationParams& p,
                           Complex z, int k, int truncation);

enum class SymbolClass {
  hermitian,
  c_selfadjoint,
  unitary,
  bounded_domain_condition,
  none,
};

/// Outcome of an exact symbol classification. canonical_params records the
/// derived normal-form data; witness names the first violated condition
/// and is nonempty exactly when kind == none.
struct ClassificationResult {
  SymbolClass kind = SymbolClass::none;
  std::map<std::string, Complex> canonical_params;
  std::string witness;
};

/// Relative tolerance for the algebraic conditions below.
inline constexpr double kClassifierTol = 1e-10;

/// Self-adjoint symbols: A real, D = conj(B), phi_sym root-compatible with
/// (A z + B)^m, and the induced constant C (A/E)^m real and nonzero.
ClassificationResult classify_hermitian(const SymbolTriple& t);

/// C_{a,b,c}-self-adjoint symbols: D = b + a B - b A and, for m >= 1, the
/// roots of phi_sym and (a A z + a B + b)^m agree.
ClassificationResult classify_c_selfadjoint(const SymbolTriple& t,
                                            const ConjugationParams& p);

/// Unitary symbols: m = 0, |A| = 1, D = -A conj(B), |C| = e^{-|B|^2 / 2}.
ClassificationResult classify_unitary(const SymbolTriple& t);

/// Domain-density condition: |A| < 1 (branch 1) or |A| = 1 together with
/// A conj(B) + D = 0 (branch 2). canonical_params reports the branch and
/// the diagnostics |A| and A conj(B) + D.
ClassificationResult classify_bounded_domain_condition(const SymbolTriple& t);

} // namespace fockrel
