#include <benchmark/benchmark.h>

#include "mtc/matrix.hpp"

using namespace mtc;

static Matrix dense(const RingPtr& ring, size_t n, unsigned seed) {
  Matrix m(ring, n, n);
  unsigned s = seed;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      s = s * 1664525u + 1013904223u;
      m.at(i, j) = CycScalar::integer(ring, static_cast<long>(s % 7) - 3);
    }
  return m;
}

static void MatMul(benchmark::State& state) {
  auto ring = CycRing::make(5);
  size_t n = static_cast<size_t>(state.range(0));
  Matrix a = dense(ring, n, 1), b = dense(ring, n, 2);
  for (auto _ : state) {
    Matrix c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(MatMul)->Arg(16)->Arg(32)->Arg(64);

static void KernelBasis(benchmark::State& state) {
  auto ring = CycRing::make(5);
  size_t n = static_cast<size_t>(state.range(0));
  Matrix a = dense(ring, n, 3);
  for (auto _ : state) {
    Matrix k = a.kernel_basis();
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(KernelBasis)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
