#include "bodyshape/archs.hpp"

#include <stdexcept>

#include "bodyshape/rng.hpp"

namespace bodyshape {
namespace neural {

namespace {

std::vector<std::unique_ptr<Layer>> conv_relu_conv(std::size_t channels) {
  std::vector<std::unique_ptr<Layer>> inner;
  inner.push_back(std::make_unique<Conv2dLayer>(channels, channels, 3, 1, 1));
  inner.push_back(std::make_unique<ReluLayer>());
  inner.push_back(std::make_unique<Conv2dLayer>(channels, channels, 3, 1, 1));
  return inner;
}

Network build_mlp13() {
  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<DenseLayer>(13, 32));
  layers.push_back(std::make_unique<ReluLayer>());
  layers.push_back(std::make_unique<DenseLayer>(32, 5));
  return Network("mlp13", {13}, std::move(layers));
}

Network build_rescnn() {
  const std::size_t s = kMaskInputSize;
  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<Conv2dLayer>(1, 8, 3, 1, 1));
  layers.push_back(std::make_unique<ReluLayer>());
  layers.push_back(std::make_unique<MaxPool2dLayer>(2, 2));  // 8 x 16 x 16
  layers.push_back(std::make_unique<ResidualBlock>(conv_relu_conv(8)));
  layers.push_back(std::make_unique<ReluLayer>());
  layers.push_back(std::make_unique<MaxPool2dLayer>(2, 2));  // 8 x 8 x 8
  layers.push_back(std::make_unique<ResidualBlock>(conv_relu_conv(8)));
  layers.push_back(std::make_unique<ReluLayer>());
  layers.push_back(std::make_unique<MaxPool2dLayer>(2, 2));  // 8 x 4 x 4
  layers.push_back(std::make_unique<FlattenLayer>());
  layers.push_back(std::make_unique<DenseLayer>(8 * (s / 8) * (s / 8), 5));
  return Network("rescnn", {1, s, s}, std::move(layers));
}

Network build_incnn() {
  const std::size_t s = kMaskInputSize;
  std::vector<std::vector<std::unique_ptr<Layer>>> branches;
  {
    std::vector<std::unique_ptr<Layer>> b;
    b.push_back(std::make_unique<Conv2dLayer>(1, 4, 1, 1, 0));
    branches.push_back(std::move(b));
  }
  {
    std::vector<std::unique_ptr<Layer>> b;
    b.push_back(std::make_unique<Conv2dLayer>(1, 4, 3, 1, 1));
    branches.push_back(std::move(b));
  }
  {
    std::vector<std::unique_ptr<Layer>> b;
    b.push_back(std::make_unique<Conv2dLayer>(1, 4, 5, 1, 2));
    branches.push_back(std::move(b));
  }

  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<InceptionBlock>(std::move(branches)));  // 12 x 32 x 32
  layers.push_back(std::make_unique<ReluLayer>());
  layers.push_back(std::make_unique<MaxPool2dLayer>(4, 4));  // 12 x 8 x 8
  layers.push_back(std::make_unique<FlattenLayer>());
  layers.push_back(std::make_unique<DenseLayer>(12 * (s / 4) * (s / 4), 5));
  return Network("incnn", {1, s, s}, std::move(layers));
}

}  // namespace

const std::vector<std::string>& known_archs() {
  static const std::vector<std::string> archs = {"mlp13", "rescnn", "incnn"};
  return archs;
}

Network build_network(const std::string& arch, std::uint64_t seed) {
  Network net = [&]() {
    if (arch == "mlp13") return build_mlp13();
    if (arch == "rescnn") return build_rescnn();
    if (arch == "incnn") return build_incnn();
    throw std::invalid_argument("unknown architecture: " + arch);
  }();

  SplitMix64 rng(derive_seed(seed, 0x1417ULL));
  for (auto& layer : net.layers()) layer->init_params(rng);
  return net;
}

}  // namespace neural
}  // namespace bodyshape
