#include <benchmark/benchmark.h>

#include "ghr/filters.hpp"
#include "ghr/random.hpp"

namespace {

void run_steps(benchmark::State& state, ghr::Variant variant) {
  const auto taps = static_cast<std::size_t>(state.range(0));
  ghr::Rng rng(7);
  ghr::QVector x(taps);
  for (auto& v : x) v = rng.gaussian_quaternion(0.5);
  const ghr::Quaternion d = rng.gaussian_quaternion(0.5);
  std::optional<ghr::Nonlinearity> phi;
  if (variant == ghr::Variant::QNGD) phi = ghr::componentwise_tanh();
  ghr::FilterState filter = ghr::make_filter(variant, taps, 1e-4, phi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghr::filter_step(filter, x, d));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_QlmsStep(benchmark::State& state) { run_steps(state, ghr::Variant::QLMS); }
void BM_WlQlmsStep(benchmark::State& state) { run_steps(state, ghr::Variant::WLQLMS); }
void BM_QngdStep(benchmark::State& state) { run_steps(state, ghr::Variant::QNGD); }

BENCHMARK(BM_QlmsStep)->RangeMultiplier(4)->Range(4, 64);
BENCHMARK(BM_WlQlmsStep)->RangeMultiplier(4)->Range(4, 64);
BENCHMARK(BM_QngdStep)->RangeMultiplier(4)->Range(4, 64);

}  // namespace
