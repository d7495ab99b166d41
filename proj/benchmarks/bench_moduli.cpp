#include <extvol/moduli.hpp>
#include <extvol/random.hpp>
#include <extvol/systole.hpp>

#include <benchmark/benchmark.h>

#include <vector>

namespace {

void BM_ReduceTau(benchmark::State& state) {
  extvol::Rng rng(3);
  std::vector<extvol::Complex> inputs(1024);
  for (auto& z : inputs) z = {rng.uniform(-50.0, 50.0), rng.uniform(1e-3, 2.0)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extvol::reduce_tau(inputs[i]).final_tau);
    i = (i + 1) % inputs.size();
  }
}
BENCHMARK(BM_ReduceTau);

void BM_TranslateReduceSiegel(benchmark::State& state) {
  extvol::Rng rng(4);
  const extvol::SiegelPoint p = extvol::random_siegel_point(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(extvol::translate_reduce_siegel(p).a()(0, 0));
}
BENCHMARK(BM_TranslateReduceSiegel)->Arg(2)->Arg(3);

}  // namespace
