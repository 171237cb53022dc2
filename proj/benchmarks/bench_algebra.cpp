#include <benchmark/benchmark.h>

#include "ghr/quaternion.hpp"
#include "ghr/random.hpp"

namespace {

void BM_HamiltonProduct(benchmark::State& state) {
  ghr::Rng rng(1);
  ghr::Quaternion p = ghr::random_point(rng);
  const ghr::Quaternion q = ghr::random_unit(rng);
  for (auto _ : state) {
    p = p * q;
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_HamiltonProduct);

void BM_Rotate(benchmark::State& state) {
  ghr::Rng rng(2);
  const ghr::Quaternion q = ghr::random_point(rng);
  const ghr::Quaternion mu = ghr::random_point(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghr::rotate(q, mu));
  }
}
BENCHMARK(BM_Rotate);

void BM_MuBasis(benchmark::State& state) {
  ghr::Rng rng(3);
  const ghr::Quaternion mu = ghr::random_point(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghr::mu_basis(mu));
  }
}
BENCHMARK(BM_MuBasis);

}  // namespace
