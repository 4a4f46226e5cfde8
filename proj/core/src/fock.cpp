#include "fockrel/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fockrel {

namespace {

// log(1e300); coefficient magnitudes past this bound are rejected.
constexpr double kMaxLogMagnitude = 690.77552789821371;

void require_nonnegative(int value, const char* what) {
  if (value < 0) {
    throw std::invalid_argument(std::string(what) + ": negative count");
  }
}

} // namespace

TaylorSeries::TaylorSeries(CVector c) : coeffs(std::move(c)) {
  if (coeffs.size() == 0) {
    coeffs = CVector::Zero(1);
  }
  if (!coeffs.allFinite()) {
    throw std::invalid_argument("TaylorSeries: non-finite coefficients");
  }
}

Complex TaylorSeries::eval(Complex z) const {
  Complex acc(0.0);
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) {
    acc = acc * z + coeffs(n);
  }
  return acc;
}

TaylorSeries TaylorSeries::derivative(int k) const {
  require_nonnegative(k, "derivative");
  CVector c = coeffs;
  for (int round = 0; round < k; ++round) {
    if (c.size() == 1) {
      c(0) = Complex(0.0);
      continue;
    }
    CVector next(c.size() - 1);
    for (Eigen::Index n = 1; n < c.size(); ++n) {
      next(n - 1) = static_cast<double>(n) * c(n);
    }
    c = std::move(next);
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::antiderivative(int m) const {
  require_nonnegative(m, "antiderivative");
  CVector c = coeffs;
  for (int round = 0; round < m; ++round) {
    CVector next = CVector::Zero(c.size() + 1);
    for (Eigen::Index n = 0; n < c.size(); ++n) {
      next(n + 1) = c(n) / static_cast<double>(n + 1);
    }
    c = std::move(next);
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::truncated(int degree) const {
  require_nonnegative(degree, "truncated");
  CVector c = CVector::Zero(degree + 1);
  const Eigen::Index keep = std::min<Eigen::Index>(degree + 1, coeffs.size());
  c.head(keep) = coeffs.head(keep);
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::constant(Complex value) {
  CVector c(1);
  c(0) = value;
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::monomial(int degree, Complex scale) {
  require_nonnegative(degree, "monomial");
  CVector c = CVector::Zero(degree + 1);
  c(degree) = scale;
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::exponential(Complex mu, int degree) {
  require_nonnegative(degree, "exponential");
  CVector c(degree + 1);
  c(0) = Complex(1.0);
  for (int n = 1; n <= degree; ++n) {
    c(n) = c(n - 1) * mu / static_cast<double>(n);
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::affine_power(Complex alpha, Complex beta, int exponent) {
  require_nonnegative(exponent, "affine_power");
  // binom(p, j) alpha^j beta^(p-j), built by the Pascal recurrence on j.
  CVector c = CVector::Zero(exponent + 1);
  Complex term = std::pow(beta, exponent);
  if (exponent == 0) {
    term = Complex(1.0);
  }
  if (beta == Complex(0.0)) {
    c(exponent) = std::pow(alpha, exponent);
    if (exponent == 0) c(0) = Complex(1.0);
    return TaylorSeries(std::move(c));
  }
  c(0) = term;
  for (int j = 1; j <= exponent; ++j) {
    term *= alpha * static_cast<double>(exponent - j + 1) /
            (beta * static_cast<double>(j));
    c(j) = term;
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
  const Eigen::Index n = std::max(a.coeffs.size(), b.coeffs.size());
  CVector c = CVector::Zero(n);
  c.head(a.coeffs.size()) = a.coeffs;
  c.head(b.coeffs.size()) += b.coeffs;
  return TaylorSeries(std::move(c));
}

TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
  return a + (Complex(-1.0) * b);
}

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
  CVector c = CVector::Zero(a.coeffs.size() + b.coeffs.size() - 1);
  for (Eigen::Index i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs(i) == Complex(0.0)) continue;
    for (Eigen::Index j = 0; j < b.coeffs.size(); ++j) {
      c(i + j) += a.coeffs(i) * b.coeffs(j);
    }
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries operator*(Complex scale, const TaylorSeries& a) {
  return TaylorSeries(scale * a.coeffs);
}

double log_sqrt_factorial(int n) {
  require_nonnegative(n, "log_sqrt_factorial");
  return 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
}

double sqrt_factorial(int n) {
  return std::exp(log_sqrt_factorial(n));
}

FockVector taylor_to_fock(const TaylorSeries& t, int truncation) {
  require_nonnegative(truncation, "taylor_to_fock");
  FockVector f;
  f.coeffs = CVector::Zero(truncation + 1);
  const Eigen::Index keep =
      std::min<Eigen::Index>(truncation + 1, t.coeffs.size());
  for (Eigen::Index n = 0; n < keep; ++n) {
    const Complex c = t.coeffs(n);
    if (c == Complex(0.0)) continue;
    const double log_mag =
        std::log(std::abs(c)) + log_sqrt_factorial(static_cast<int>(n));
    if (log_mag > kMaxLogMagnitude) {
      throw TruncationOverflow("taylor_to_fock: coefficient magnitude exceeds 1e300");
    }
    f.coeffs(n) = c * sqrt_factorial(static_cast<int>(n));
  }
  return f;
}

TaylorSeries fock_to_taylor(const FockVector& f) {
  CVector c(f.coeffs.size());
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    c(n) = f.coeffs(n) / sqrt_factorial(static_cast<int>(n));
  }
  return TaylorSeries(std::move(c));
}

Complex inner(const FockVector& f, const FockVector& g) {
  if (f.coeffs.size() != g.coeffs.size()) {
    throw std::invalid_argument("inner: truncation mismatch");
  }
  return g.coeffs.dot(f.coeffs);
}

FockVector kernel_vector(const KernelSpec& spec, int truncation) {
  require_nonnegative(truncation, "kernel_vector");
  require_nonnegative(spec.k, "kernel_vector order");
  const Complex zbar = std::conj(spec.z);
  TaylorSeries t =
      TaylorSeries::affine_power(spec.a, spec.b, spec.k) *
      TaylorSeries::exponential(zbar, truncation);
  return taylor_to_fock(t.truncated(truncation), truncation);
}

Complex eval_derivative(const FockVector& f, Complex z, int k) {
  return inner(f, kernel_vector({z, Complex(1.0), Complex(0.0), k},
                                f.truncation()));
}

Subspace vanishing_subspace(int m, Complex y, int truncation, int max_degree) {
  require_nonnegative(m, "vanishing_subspace");
  if (max_degree < 0) {
    max_degree = truncation;
  }
  if (max_degree > truncation) {
    throw std::invalid_argument("vanishing_subspace: max_degree exceeds truncation");
  }
  if (m > max_degree) {
    throw std::invalid_argument("vanishing_subspace: vanishing order exceeds degree");
  }
  const TaylorSeries root_factor = TaylorSeries::affine_power(Complex(1.0), -y, m);
  std::vector<CVector> generators;
  generators.reserve(static_cast<std::size_t>(max_degree - m + 1));
  for (int j = 0; j + m <= max_degree; ++j) {
    const TaylorSeries gen = root_factor * TaylorSeries::monomial(j);
    CVector v = taylor_to_fock(gen, truncation).coeffs;
    generators.push_back(v.normalized());
  }
  return orthonormalize(generators);
}

double m_quantity(const TaylorSeries& f, const TaylorSeries& g, Complex z) {
  const double fz = std::abs(f.eval(z));
  const double exponent = std::norm(g.eval(z)) - std::norm(z);
  return fz * fz * std::exp(exponent);
}

double sup_m_estimate(const TaylorSeries& f, const TaylorSeries& g,
                      double radius, int grid) {
  if (grid < 2) {
    throw std::invalid_argument("sup_m_estimate: grid must be at least 2");
  }
  if (radius <= 0.0) {
    throw std::invalid_argument("sup_m_estimate: radius must be positive");
  }
  double best = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = -radius + 2.0 * radius * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double y = -radius + 2.0 * radius * j / (grid - 1);
      best = std::max(best, m_quantity(f, g, Complex(x, y)));
    }
  }
  return best;
}

} // namespace fockrel
