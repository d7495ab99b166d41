#include <extvol/extremal_length.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_LenClassConstant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto field = extvol::ConformalField::constant({0.2, 1.1}, n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(extvol::len_class(field, {1, 1}));
}
BENCHMARK(BM_LenClassConstant)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_LenClassTrig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto field = extvol::ConformalField::trigonometric({0.2, 1.1}, n, {7, 3, 0.5, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(extvol::len_class(field, {1, 1}));
}
BENCHMARK(BM_LenClassTrig)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
