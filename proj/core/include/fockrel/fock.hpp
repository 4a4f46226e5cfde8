#pragma once

#include "fockrel/errors.hpp"
#include "fockrel/subspace.hpp"

namespace fockrel {

// Everything here lives in the Fock space of entire functions with
// Gaussian-weighted inner product
//
//   <f, g> = (1/pi) Int f(z) conj(g(z)) e^{-|z|^2} dV(z),
//
// truncated to the span of e_0, ..., e_N where e_n(z) = z^n / sqrt(n!) is
// the orthonormal monomial basis. A truncation level N means vectors carry
// N+1 coefficients.

/// Polynomial (or truncated power series) in the plain monomial basis:
/// coeffs[n] multiplies z^n.
struct TaylorSeries {
  CVector coeffs = CVector::Zero(1);

  TaylorSeries() = default;
  explicit TaylorSeries(CVector c);

  int max_degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// Horner evaluation at z.
  Complex eval(Complex z) const;

  /// k-th derivative.
  TaylorSeries derivative(int k = 1) const;

  /// m-fold antiderivative with all new jets at 0 set to zero, so the
  /// result and its first m-1 derivatives vanish at the origin.
  TaylorSeries antiderivative(int m = 1) const;

  /// Drop terms above the given degree (pad with zeros if shorter).
  TaylorSeries truncated(int degree) const;

  static TaylorSeries constant(Complex value);
  static TaylorSeries monomial(int degree, Complex scale = Complex(1.0));
  /// Taylor expansion of e^{mu z} through the given degree.
  static TaylorSeries exponential(Complex mu, int degree);
  /// (alpha z + beta)^exponent, expanded exactly.
  static TaylorSeries affine_power(Complex alpha, Complex beta, int exponent);
};

TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries operator*(Complex scale, const TaylorSeries& a);

/// Coefficient vector in the orthonormal basis e_n, truncated at level N.
struct FockVector {
  CVector coeffs = CVector::Zero(1);

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
  // stableNorm: coefficients may legitimately sit near the 1e300
  // overflow screen, where squaring would overflow.
  double norm() const { return coeffs.stableNorm(); }
};

/// log sqrt(n!) and sqrt(n!), via lgamma so large n stays exact in the log.
double log_sqrt_factorial(int n);
double sqrt_factorial(int n);

/// Expand a series in the orthonormal basis: coeffs[n] = t.coeffs[n] * sqrt(n!).
/// Magnitudes are screened in log scale; anything past 1e300 throws
/// TruncationOverflow rather than producing inf.
FockVector taylor_to_fock(const TaylorSeries& t, int truncation);

/// Inverse of taylor_to_fock (always safe: divides by sqrt(n!)).
TaylorSeries fock_to_taylor(const FockVector& f);

/// <f, g> = sum_n f_n conj(g_n). Truncations must agree.
Complex inner(const FockVector& f, const FockVector& g);

/// Parameters of the kernel function (a x + b)^k e^{x conj(z)}.
struct KernelSpec {
  Complex z;
  Complex a = Complex(1.0);
  Complex b = Complex(0.0);
  int k = 0;
};

/// Fock coefficients of the kernel function. Its Taylor coefficient of x^n
/// is sum_{j <= min(k,n)} binom(k,j) a^j b^{k-j} conj(z)^{n-j} / (n-j)!.
/// Pairing against these kernels evaluates derivatives: with a=1, b=0,
/// <f, kernel(z,1,0,k)> = f^(k)(z).
FockVector kernel_vector(const KernelSpec& spec, int truncation);

/// f^(k)(z) via the kernel pairing above.
Complex eval_derivative(const FockVector& f, Complex z, int k);

/// Truncated subspace of functions vanishing to order m at y: the span of
/// (z - y)^m z^j for j = 0..max_degree - m (max_degree defaults to the
/// truncation level). Dimension is max_degree + 1 - m.
Subspace vanishing_subspace(int m, Complex y, int truncation, int max_degree = -1);

/// |f(z)|^2 e^{|g(z)|^2 - |z|^2}, the pointwise quantity whose supremum
/// over z controls boundedness of weighted composition maps.
double m_quantity(const TaylorSeries& f, const TaylorSeries& g, Complex z);

/// Lower bound for sup_z m_quantity over the square |Re z|, |Im z| <= radius,
/// evaluated on a grid x grid lattice (grid >= 2, endpoints included).
double sup_m_estimate(const TaylorSeries& f, const TaylorSeries& g,
                      double radius, int grid);

} // namespace fockrel
