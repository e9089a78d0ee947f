#include <benchmark/benchmark.h>

#include "bodyshape/measure.hpp"
#include "bodyshape/silhouette.hpp"
#include "bodyshape/transforms.hpp"

using namespace bodyshape;

static void BM_GenerateSilhouette(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_silhouette(ShapeLabel::Hourglass, seed++));
  }
}
BENCHMARK(BM_GenerateSilhouette);

static void BM_ExtractMeasurements(benchmark::State& state) {
  const auto [mask, params] = generate_silhouette(ShapeLabel::Triangle, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_measurements(mask));
  }
}
BENCHMARK(BM_ExtractMeasurements);

static void BM_Rotate(benchmark::State& state) {
  const auto [mask, params] = generate_silhouette(ShapeLabel::Apple, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rotate(mask, 17.0));
  }
}
BENCHMARK(BM_Rotate);

static void BM_SobelPlusGaussian(benchmark::State& state) {
  const auto [mask, params] = generate_silhouette(ShapeLabel::Rectangle, 3);
  const GrayImage gray = mask_to_gray(mask);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_blur(sobel_edges(gray), 1.0));
  }
}
BENCHMARK(BM_SobelPlusGaussian);

static void BM_ResizeTo32(benchmark::State& state) {
  const auto [mask, params] = generate_silhouette(ShapeLabel::Hourglass, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resize(mask, 32, 32));
  }
}
BENCHMARK(BM_ResizeTo32);

BENCHMARK_MAIN();
