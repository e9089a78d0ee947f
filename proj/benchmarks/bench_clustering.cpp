#include <benchmark/benchmark.h>

#include "bodyshape/anthro.hpp"
#include "bodyshape/dataset.hpp"
#include "bodyshape/fcm.hpp"
#include "bodyshape/kmeans.hpp"
#include "bodyshape/pca.hpp"
#include "bodyshape/rng.hpp"

using namespace bodyshape;
using namespace bodyshape::stats;

namespace {

DataMatrix blobs(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> centers(k * d);
  for (double& v : centers) v = rng.uniform(-10.0, 10.0);
  DataMatrix X(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = i % k;
    for (std::size_t f = 0; f < d; ++f) X.at(i, f) = centers[b * d + f] + rng.gaussian();
  }
  return X;
}

}  // namespace

static void BM_KMeansFit(benchmark::State& state) {
  const DataMatrix X = blobs(static_cast<std::size_t>(state.range(0)), 8, 5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans_fit(X, 5, 42));
  }
}
BENCHMARK(BM_KMeansFit)->Arg(200)->Arg(1000);

static void BM_FcmFit(benchmark::State& state) {
  const DataMatrix X = blobs(static_cast<std::size_t>(state.range(0)), 8, 5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fcm_fit(X, 5, 2.0, 1e-6, 300, 42));
  }
}
BENCHMARK(BM_FcmFit)->Arg(200)->Arg(500);

static void BM_PcaFit24(benchmark::State& state) {
  const DataMatrix X = blobs(static_cast<std::size_t>(state.range(0)), 24, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pca_fit(X, PcaSelector::variance(0.85)));
  }
}
BENCHMARK(BM_PcaFit24)->Arg(300);

static void BM_RatioFeatures(benchmark::State& state) {
  const DatasetTable table = synthetic_true_measurements(200, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(anthro::ratio_feature_table(table));
  }
}
BENCHMARK(BM_RatioFeatures);

BENCHMARK_MAIN();
