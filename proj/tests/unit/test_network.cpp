#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "bodyshape/archs.hpp"
#include "bodyshape/network.hpp"

using namespace bodyshape;
using namespace bodyshape::neural;

namespace {

Network dense_only_net() {
  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<DenseLayer>(3, 5));
  return Network("test", {3}, std::move(layers));
}

}  // namespace

TEST_CASE("zero-weight dense network outputs its biases") {
  Network net = dense_only_net();
  auto biases = net.layers()[0]->biases();
  for (std::size_t i = 0; i < biases.size(); ++i) biases[i] = 0.5 * static_cast<double>(i);

  Tensor x({3});
  x.data = {1.0, -2.0, 3.0};
  const Tensor out = net.infer(x);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(out.data[i] == doctest::Approx(0.5 * static_cast<double>(i)));
  }
}

TEST_CASE("networks must end with five logits") {
  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<DenseLayer>(3, 4));
  CHECK_THROWS_AS(Network("bad", {3}, std::move(layers)), std::invalid_argument);
}

TEST_CASE("input shape mismatches are rejected") {
  const Network net = dense_only_net();
  Tensor wrong({4});
  CHECK_THROWS_AS(net.infer(wrong), std::invalid_argument);

  Tensor nan_input({3});
  nan_input.data = {1.0, std::nan(""), 0.0};
  CHECK_THROWS_AS(net.infer(nan_input), std::invalid_argument);
}

TEST_CASE("predict follows the softmax arithmetic") {
  Network net = dense_only_net();
  auto biases = net.layers()[0]->biases();

  SUBCASE("one raised logit") {
    biases[4] = 1.0;
    Tensor x({3});
    const auto [label, probs] = predict(net, x);
    CHECK(label == ShapeLabel::Triangle);  // ordinal 4
    const double expected = std::exp(1.0) / (4.0 + std::exp(1.0));
    CHECK(probs[4] == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("all-equal logits tie to the lowest ordinal") {
    Tensor x({3});
    const auto [label, probs] = predict(net, x);
    CHECK(label == ShapeLabel::Apple);  // ordinal 0
    for (double p : probs) CHECK(p == doctest::Approx(0.2).epsilon(1e-12));
  }

  SUBCASE("probabilities sum to one and argmax ignores logit shifts") {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 25; ++trial) {
      for (std::size_t i = 0; i < 5; ++i) biases[i] = rng.uniform(-3, 3);
      Tensor x({3});
      const auto [label, probs] = predict(net, x);
      double sum = 0.0;
      for (double p : probs) sum += p;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

      const double shift = rng.uniform(-10, 10);
      for (std::size_t i = 0; i < 5; ++i) biases[i] += shift;
      const auto [label2, probs2] = predict(net, x);
      CHECK(label2 == label);
    }
  }
}

TEST_CASE("freezing the last five of sixteen layers freezes 0..10") {
  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<DenseLayer>(8, 8));
  for (int i = 0; i < 14; ++i) layers.push_back(std::make_unique<ReluLayer>());
  layers.push_back(std::make_unique<DenseLayer>(8, 5));
  const Network net("sixteen", {8}, std::move(layers));
  REQUIRE(net.layers().size() == 16);

  const Network frozen = freeze_layers(net, FreezeSpec::first(11));
  for (std::size_t i = 0; i < 16; ++i) CHECK(frozen.layers()[i]->frozen() == (i <= 10));

  const Network last5 = freeze_layers(net, FreezeSpec::last(5));
  for (std::size_t i = 0; i < 16; ++i) CHECK(last5.layers()[i]->frozen() == (i >= 11));

  const Network none = freeze_layers(net, FreezeSpec::none());
  for (const auto& l : none.layers()) CHECK_FALSE(l->frozen());

  const Network all = freeze_layers(net, FreezeSpec::all());
  for (const auto& l : all.layers()) CHECK(l->frozen());

  CHECK_THROWS_AS(freeze_layers(net, FreezeSpec::last(17)), std::invalid_argument);
  CHECK_THROWS_AS(freeze_layers(net, FreezeSpec::at({16})), std::invalid_argument);
}

TEST_CASE("freezing a composite layer freezes its nested parameters") {
  Network net = build_network("rescnn", 1);
  const Network frozen = freeze_layers(net, FreezeSpec::all());
  for (const Layer* leaf : frozen.param_layers()) CHECK(leaf->frozen());
}

TEST_CASE("reference architectures build and classify") {
  for (const std::string& arch : known_archs()) {
    const Network net = build_network(arch, 7);
    CHECK(net.arch() == arch);
    Tensor x(net.input_shape());
    for (std::size_t i = 0; i < x.numel(); ++i) x.data[i] = (i % 3 == 0) ? 1.0 : 0.0;
    const Tensor out = net.infer(x);
    CHECK(out.shape == std::vector<std::size_t>{5});
  }
  CHECK_THROWS_AS(build_network("vgg16", 0), std::invalid_argument);
}

TEST_CASE("network copies are deep") {
  Network a = build_network("mlp13", 3);
  Network b = a;
  auto wa = a.param_layers()[0]->weights();
  const double original = wa[0];
  wa[0] += 1.0;
  CHECK(b.param_layers()[0]->weights()[0] == original);
}
