#pragma once

// Reference computations the tests trust instead of the library under
// test. Everything here is deliberately primitive: plain loops, no Eigen,
// no shared code with core/.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 1.0;
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      double p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

inline Complex horner(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc(0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * z + coeffs[i];
  }
  return acc;
}

// Gaussian-weighted inner product of two polynomials given by monomial
// coefficients:
//
//   <f, g> = (1/pi) Int f(z) conj(g(z)) e^{-|z|^2} dA(z)
//
// computed in polar coordinates, Gauss-Legendre radially on [0, radius]
// and the trapezoid rule in the angle (exact once the angular node count
// exceeds the bandwidth of f conj(g)). With radius 9 the dropped radial
// tail is below 1e-25 relative for monomial degrees up to ~25.
inline Complex inner_by_quadrature(const std::vector<Complex>& f,
                                   const std::vector<Complex>& g,
                                   double radius = 9.0, int radial = 240,
                                   int angular = 256) {
  std::vector<double> x, w;
  gauss_legendre(radial, x, w);
  Complex total(0.0);
  for (int i = 0; i < radial; ++i) {
    const double r = 0.5 * radius * (x[i] + 1.0);
    const double wr = 0.5 * radius * w[i] * r * std::exp(-r * r);
    Complex ring(0.0);
    for (int j = 0; j < angular; ++j) {
      const double th = 2.0 * kPi * j / angular;
      const Complex z = std::polar(r, th);
      ring += horner(f, z) * std::conj(horner(g, z));
    }
    total += wr * ring * (2.0 * kPi / angular);
  }
  return total / kPi;
}

// Rank of a list of vectors by diagonally pivoted elimination on their
// Gram matrix. The tolerance applies to the squared-norm scale.
inline int gram_rank(const std::vector<std::vector<Complex>>& vectors,
                     double tol = 1e-9) {
  const int n = static_cast<int>(vectors.size());
  if (n == 0) return 0;
  std::vector<std::vector<Complex>> g(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex s(0.0);
      for (std::size_t k = 0; k < vectors[i].size(); ++k) {
        s += vectors[i][k] * std::conj(vectors[j][k]);
      }
      g[i][j] = s;
    }
  }
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, g[i][i].real());
  if (scale <= 0.0) return 0;

  std::vector<bool> used(n, false);
  int rank = 0;
  for (int step = 0; step < n; ++step) {
    int p = -1;
    double best = tol * scale;
    for (int i = 0; i < n; ++i) {
      if (!used[i] && g[i][i].real() > best) {
        best = g[i][i].real();
        p = i;
      }
    }
    if (p < 0) break;
    used[p] = true;
    ++rank;
    const double d = g[p][p].real();
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        g[i][j] -= g[i][p] * g[p][j] / d;
      }
    }
  }
  return rank;
}

// n! as a double, for modest n.
inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

} // namespace oracle
