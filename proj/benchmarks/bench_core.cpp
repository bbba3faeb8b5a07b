#include <benchmark/benchmark.h>

#include <cmath>

#include "qi/quasiinterp.hpp"
#include "qi/spectrum.hpp"

namespace {

qi::SpectralFunction decaying(int dim, int radius) {
  qi::SpectralFunction f(dim);
  for (int a = -radius; a <= radius; ++a) {
    if (dim == 1) {
      f.set({a}, 1.0 / (1.0 + a * a));
      continue;
    }
    for (int b = -radius; b <= radius; ++b) f.set({a, b}, 1.0 / (1.0 + a * a + b * b));
  }
  return f;
}

void BM_AnalyzeSamples2D(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto L = qi::DilationLattice::isotropic(2, 2);
  const auto f = decaying(2, 6);
  const auto values = qi::sample_values(f, L, level);
  for (auto _ : state) benchmark::DoNotOptimize(qi::analyze_samples(values, L, level));
  state.SetComplexityN(static_cast<std::int64_t>(values.size()));
}
BENCHMARK(BM_AnalyzeSamples2D)->DenseRange(3, 8)->Complexity();

void BM_ApplySpectral(benchmark::State& state) {
  const qi::QuasiInterpOperator op(qi::Dirichlet{}, qi::Average{0.5}, qi::DilationLattice::isotropic(2, 2),
                                   static_cast<int>(state.range(0)));
  const auto f = decaying(2, 24);
  for (auto _ : state) benchmark::DoNotOptimize(qi::apply_spectral(op, f));
}
BENCHMARK(BM_ApplySpectral)->DenseRange(3, 7);

void BM_ApplySpatial(benchmark::State& state) {
  const qi::QuasiInterpOperator op(qi::Dirichlet{}, qi::Average{0.5}, qi::DilationLattice::isotropic(2, 2),
                                   static_cast<int>(state.range(0)));
  const auto f = decaying(2, 24);
  for (auto _ : state) benchmark::DoNotOptimize(qi::apply_spatial(op, f));
}
BENCHMARK(BM_ApplySpatial)->DenseRange(3, 6);

void BM_LpNorm(benchmark::State& state) {
  const auto f = decaying(static_cast<int>(state.range(0)), 12);
  const double p = state.range(1) == 0 ? qi::kInf : static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(qi::lp_norm(f, p));
}
BENCHMARK(BM_LpNorm)->ArgsProduct({{1, 2}, {1, 2, 0}});

}  // namespace

BENCHMARK_MAIN();
