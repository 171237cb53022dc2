#include <benchmark/benchmark.h>

#include "ghr/derivative.hpp"
#include "ghr/random.hpp"
#include "ghr/table.hpp"
#include "ghr/theorems.hpp"

namespace {

const ghr::QFunction kSquare = [](const ghr::Quaternion& q) { return q * q; };

void BM_LeftHrNumerical(benchmark::State& state) {
  ghr::Rng rng(4);
  const ghr::Quaternion q = ghr::random_point(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghr::left_hr(kSquare, q));
  }
}
BENCHMARK(BM_LeftHrNumerical);

void BM_LeftGhrNumerical(benchmark::State& state) {
  ghr::Rng rng(5);
  const ghr::Quaternion q = ghr::random_point(rng);
  const ghr::Quaternion mu = ghr::random_point(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghr::left_ghr(kSquare, q, mu));
  }
}
BENCHMARK(BM_LeftGhrNumerical);

void BM_TableDerivative(benchmark::State& state) {
  const auto entries = ghr::catalogue();
  const ghr::TableEntry& entry = entries[static_cast<std::size_t>(state.range(0))];
  ghr::Rng rng(6);
  const ghr::Quaternion q = ghr::sample_admissible_point(entry, rng, 0.25);
  const ghr::Quaternion mu = ghr::random_point(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghr::derivative(entry, q, mu));
  }
  state.SetLabel(entry.label());
}
BENCHMARK(BM_TableDerivative)->DenseRange(0, 3);

void BM_MvtQuadrature(benchmark::State& state) {
  const ghr::Quaternion q0(0.1, 0.2, -0.3, 0.4);
  const ghr::Quaternion q1(0.4, -0.1, 0.2, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghr::mvt_left(kSquare, q0, q1, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_MvtQuadrature)->Arg(100)->Arg(1000);

}  // namespace
