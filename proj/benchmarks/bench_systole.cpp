#include <extvol/moduli.hpp>
#include <extvol/systole.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_SystoleDim1(benchmark::State& state) {
  const extvol::ComplexLattice l =
      extvol::ComplexLattice::from_columns({{extvol::Complex{1.0, 0.0}}, {extvol::Complex{0.3, 1.1}}});
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extvol::complex_systole(l, {bound}).value);
}
BENCHMARK(BM_SystoleDim1)->Arg(3)->Arg(5)->Arg(10);

void BM_SystoleDim2(benchmark::State& state) {
  extvol::Rng rng(11);
  const extvol::ComplexLattice l = extvol::from_siegel(extvol::random_siegel_point(2, rng));
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extvol::complex_systole(l, {bound}).value);
}
BENCHMARK(BM_SystoleDim2)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
