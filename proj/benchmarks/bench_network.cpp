#include <benchmark/benchmark.h>

#include "bodyshape/archs.hpp"
#include "bodyshape/dataset.hpp"
#include "bodyshape/train.hpp"

using namespace bodyshape;
using namespace bodyshape::neural;

static void BM_RescnnForward(benchmark::State& state) {
  const Network net = build_network("rescnn", 7);
  const Dataset data = synthetic_mask_dataset(1, 7, kMaskInputSize);
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.infer(data[0].input));
  }
}
BENCHMARK(BM_RescnnForward);

static void BM_RescnnTrainStep(benchmark::State& state) {
  Network net = build_network("rescnn", 7);
  const Dataset data = synthetic_mask_dataset(7, 7, kMaskInputSize);
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss_and_grad(net, std::span<const Sample>(data.data(), 32)));
  }
}
BENCHMARK(BM_RescnnTrainStep);

static void BM_Mlp13Forward(benchmark::State& state) {
  const Network net = build_network("mlp13", 7);
  Tensor x({13});
  for (std::size_t i = 0; i < 13; ++i) x.data[i] = 0.1 * static_cast<double>(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.infer(x));
  }
}
BENCHMARK(BM_Mlp13Forward);

BENCHMARK_MAIN();
