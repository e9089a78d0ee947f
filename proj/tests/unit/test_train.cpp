#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "bodyshape/archs.hpp"
#include "bodyshape/dataset.hpp"
#include "bodyshape/train.hpp"

using namespace bodyshape;
using namespace bodyshape::neural;

namespace {

// Two linearly separable point clouds mapped onto labels 0 and 1.
Dataset separable_toy(std::size_t per_class, std::uint64_t seed) {
  Dataset data;
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < per_class; ++i) {
    for (int c = 0; c < 2; ++c) {
      Tensor x({2});
      x.data = {(c == 0 ? -1.0 : 1.0) + 0.2 * rng.gaussian(),
                (c == 0 ? 1.0 : -1.0) + 0.2 * rng.gaussian()};
      data.push_back({std::move(x), c});
    }
  }
  return data;
}

Network toy_net(std::uint64_t seed) {
  // 2 -> 5 single dense layer; only labels 0/1 are populated.
  std::vector<std::unique_ptr<Layer>> layers;
  layers.push_back(std::make_unique<DenseLayer>(2, 5));
  Network net("toy", {2}, std::move(layers));
  SplitMix64 rng(seed);
  for (auto* l : net.param_layers()) l->init_params(rng);
  return net;
}

std::vector<double> snapshot_weights(const Network& net) {
  std::vector<double> out;
  for (const Layer* l : net.param_layers()) {
    out.insert(out.end(), l->weights().begin(), l->weights().end());
    out.insert(out.end(), l->biases().begin(), l->biases().end());
  }
  return out;
}

}  // namespace

TEST_CASE("uniform logits cost ln 5 and saturated logits cost nothing") {
  Network net = toy_net(1);
  for (auto* l : net.param_layers()) {
    auto w = l->weights();
    std::fill(w.begin(), w.end(), 0.0);
    auto b = l->biases();
    std::fill(b.begin(), b.end(), 0.0);
  }
  Dataset batch;
  Tensor x({2});
  x.data = {0.3, -0.4};
  batch.push_back({x, 2});
  CHECK(loss_and_grad(net, batch) == doctest::Approx(std::log(5.0)).epsilon(1e-12));

  auto biases = net.param_layers()[0]->biases();
  biases[2] = 1000.0;
  CHECK(loss_and_grad(net, batch) < 1e-6);
}

TEST_CASE("zero learning rate leaves parameters untouched") {
  const Dataset data = separable_toy(20, 3);
  Network net = toy_net(5);
  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.epochs = 4;
  cfg.seed = 9;

  const auto before = snapshot_weights(net);
  const auto [trained, curve] = train(net, data, cfg);
  CHECK(snapshot_weights(trained) == before);
  for (std::size_t e = 1; e < curve.epochs(); ++e) {
    CHECK(curve.val_loss[e] == doctest::Approx(curve.val_loss[0]).epsilon(1e-12));
  }
}

TEST_CASE("a separable toy problem trains to perfect accuracy") {
  const Dataset data = separable_toy(40, 3);
  Network net = toy_net(5);
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.seed = 9;
  cfg.learning_rate = 0.05;

  const auto [trained, curve] = train(net, data, cfg);
  const auto [train_idx, val_idx] = stratified_split(data, cfg.validation_fraction, cfg.seed);
  const auto [loss, acc] = evaluate(trained, data, train_idx);
  CHECK(acc == doctest::Approx(1.0));
  CHECK(curve.epochs() == 200);
}

TEST_CASE("full-batch gradient descent decreases the loss monotonically") {
  const Dataset data = separable_toy(16, 7);
  Network net = toy_net(2);
  TrainConfig cfg;
  cfg.epochs = 40;
  cfg.seed = 11;
  cfg.momentum = 0.0;
  cfg.learning_rate = 0.02;
  cfg.batch_size = data.size();  // convex single-layer softmax objective

  const auto [trained, curve] = train(net, data, cfg);
  for (std::size_t e = 0; e + 1 < curve.epochs(); ++e) {
    CHECK(curve.train_loss[e + 1] <= curve.train_loss[e] + 1e-12);
  }
}

TEST_CASE("frozen networks do not move at all") {
  const Dataset data = separable_toy(10, 1);
  Network net = freeze_layers(toy_net(8), FreezeSpec::all());
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.seed = 3;

  const auto before = snapshot_weights(net);
  const auto [trained, curve] = train(net, data, cfg);
  CHECK(snapshot_weights(trained) == before);  // bit-identical

  // Loss never changes because nothing trains.
  for (std::size_t e = 1; e < curve.epochs(); ++e) {
    CHECK(curve.val_loss[e] == curve.val_loss[0]);
  }
}

TEST_CASE("training is deterministic in the seed") {
  const Dataset data = separable_toy(12, 4);
  TrainConfig cfg;
  cfg.epochs = 6;
  cfg.seed = 21;

  const auto [a, curve_a] = train(toy_net(6), data, cfg);
  const auto [b, curve_b] = train(toy_net(6), data, cfg);
  CHECK(snapshot_weights(a) == snapshot_weights(b));
  CHECK(curve_a.train_loss == curve_b.train_loss);
}

TEST_CASE("stratified split rejects classes that would empty") {
  Dataset data;
  Tensor x({2});
  data.push_back({x, 0});
  data.push_back({x, 0});
  data.push_back({x, 1});  // single sample: validation would swallow it or starve it
  CHECK_THROWS_AS(stratified_split(data, 0.5, 0), std::invalid_argument);
}

TEST_CASE("stratified split is proportional per class") {
  Dataset data;
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < 50; ++i) {
      Tensor x({2});
      data.push_back({x, c});
    }
  }
  const auto [train_idx, val_idx] = stratified_split(data, 0.2, 7);
  CHECK(train_idx.size() == 80);
  CHECK(val_idx.size() == 20);
  std::size_t val_class0 = 0;
  for (std::size_t i : val_idx) val_class0 += data[i].label == 0;
  CHECK(val_class0 == 10);
}

TEST_CASE("train config validation") {
  TrainConfig cfg;
  cfg.momentum = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.validation_fraction = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
