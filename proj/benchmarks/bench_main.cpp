#include <benchmark/benchmark.h>

#include "commexp/analysis.hpp"
#include "commexp/catalog.hpp"
#include "commexp/eigen.hpp"
#include "commexp/matfun.hpp"
#include "commexp/rng.hpp"
#include "commexp/spectral.hpp"

using namespace commexp;

namespace {

CMatrix random3() {
  Rng rng(0xfb21bd19f7021c3eULL);
  return rng.matrix(3, 1.5);
}

void BM_eigenvalues(benchmark::State& state) {
  CMatrix m = random3();
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}
BENCHMARK(BM_eigenvalues);

void BM_expm(benchmark::State& state) {
  CMatrix m = random3();
  for (auto _ : state) benchmark::DoNotOptimize(expm(m));
}
BENCHMARK(BM_expm);

void BM_logm(benchmark::State& state) {
  CMatrix e = expm(random3() * Complex(0.4, 0.0));
  for (auto _ : state) benchmark::DoNotOptimize(logm_principal(e));
}
BENCHMARK(BM_logm);

void BM_property_l(benchmark::State& state) {
  const auto& tu = catalog()[0];
  for (auto _ : state) benchmark::DoNotOptimize(property_l(tu.a, tu.b));
}
BENCHMARK(BM_property_l);

void BM_sweep50(benchmark::State& state) {
  const auto& sc = catalog()[1];
  for (auto _ : state) benchmark::DoNotOptimize(sweep_table(sc.a, sc.b, 50));
}
BENCHMARK(BM_sweep50);

void BM_analyze(benchmark::State& state) {
  const auto& tu = catalog()[0];
  for (auto _ : state) benchmark::DoNotOptimize(analyze(tu.a, tu.b, 50));
}
BENCHMARK(BM_analyze);

}  // namespace

BENCHMARK_MAIN();
