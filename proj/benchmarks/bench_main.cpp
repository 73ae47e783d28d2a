#include <benchmark/benchmark.h>

#include <random>

#include "specmosaic/specmosaic.hpp"

namespace {

using namespace specmosaic;

SpectralCube noise_cube(std::size_t n, std::size_t bands, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  SpectralCube c(n, n, bands);
  for (double& x : c.data()) x = dist(rng);
  return c;
}

void BM_FrequencyVariationMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise_cube(n, 16, 1), b = noise_cube(n, 16, 2);
  for (auto _ : state) benchmark::DoNotOptimize(frequency_variation_map(a, b, {}));
}
BENCHMARK(BM_FrequencyVariationMap)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_WbBilinear(benchmark::State& state) {
  const auto pattern = SfaPattern::row_major(4);
  const auto m = mosaic(noise_cube(static_cast<std::size_t>(state.range(0)), 16, 3), pattern);
  for (auto _ : state) benchmark::DoNotOptimize(wb_bilinear(m, pattern));
}
BENCHMARK(BM_WbBilinear)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Ssim(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise_cube(n, 16, 4), b = noise_cube(n, 16, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ssim(a, b));
}
BENCHMARK(BM_Ssim)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
