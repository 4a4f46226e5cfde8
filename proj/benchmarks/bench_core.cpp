#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include <fockrel/fock.hpp>
#include <fockrel/relation.hpp>
#include <fockrel/subspace.hpp>
#include <fockrel/wco.hpp>

using fockrel::CMatrix;
using fockrel::Complex;

namespace {

fockrel::SymbolTriple bench_triple(int m) {
  fockrel::SymbolTriple t;
  t.C = Complex(0.7, -0.2);
  t.D = Complex(0.3, 0.1);
  t.A = Complex(0.9, 0.25);
  t.B = Complex(-0.4, 0.15);
  t.E = Complex(0.5, 0.2);
  t.F = Complex(0.3, 0.0);
  t.m = m;
  return t;
}

// Dense full-rank matrix with entries of mixed magnitude, standing in
// for a stacked graph frame.
CMatrix dense_columns(int rows, int cols) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = Complex(std::sin(0.7 * i + 1.3 * j), std::cos(1.1 * i - j));
    }
  }
  return m;
}

void BM_WcoMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = bench_triple(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fockrel::wco_matrix(t.C, t.D, t.A, t.B, n));
  }
}
BENCHMARK(BM_WcoMatrix)->Arg(40)->Arg(60);

void BM_ConjugationMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = fockrel::validate_conjugation(
      Complex(1.0, 0.0), Complex(0.0, 0.4),
      std::exp(Complex(-0.08, 0.0)) * Complex(0.0, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fockrel::conjugation_matrix(p, n));
  }
}
BENCHMARK(BM_ConjugationMatrix)->Arg(40)->Arg(60);

void BM_BuildSmax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = bench_triple(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fockrel::build_smax(t, n, n / 2));
  }
}
BENCHMARK(BM_BuildSmax)->Arg(30)->Arg(40);

void BM_Adjoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rel = fockrel::build_smax(bench_triple(2), n, n / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fockrel::adjoint(rel));
  }
}
BENCHMARK(BM_Adjoint)->Arg(30)->Arg(40);

void BM_RelationNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  fockrel::SymbolTriple t = bench_triple(1);
  t.A = Complex(0.5, 0.1);
  const auto rel = fockrel::build_smax(t, n, n / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fockrel::relation_norm(rel));
  }
}
BENCHMARK(BM_RelationNorm)->Arg(30)->Arg(40);

void BM_Orthonormalize(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  const CMatrix cols = dense_columns(rows, rows / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fockrel::orthonormalize(cols));
  }
}
BENCHMARK(BM_Orthonormalize)->Arg(82)->Arg(122);

} // namespace

BENCHMARK_MAIN();
