#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bodyshape/loss_curve.hpp"
#include "bodyshape/network.hpp"
#include "bodyshape/tensor.hpp"

namespace bodyshape {
namespace neural {

struct TrainConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch_size = 32;
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  double validation_fraction = 0.2;

  void validate() const;
};

struct Sample {
  Tensor input;
  int label = 0;  // ShapeLabel ordinal 0..4
};

using Dataset = std::vector<Sample>;

/// Mean softmax cross-entropy over the batch; parameter gradients are
/// accumulated into the network's layers (zeroed first). Frozen layers
/// keep zero gradients. Labels must be in 0..4.
double loss_and_grad(Network& net, std::span<const Sample> batch);

/// Minibatch SGD with momentum over a stratified train/validation split
/// (split and per-epoch shuffles both derive from cfg.seed, so training
/// is fully reproducible). Frozen parameters are never touched. Returns
/// the trained network and the per-epoch loss curve.
std::pair<Network, LossCurve> train(const Network& net, const Dataset& dataset,
                                    const TrainConfig& cfg);

/// The stratified split used by train(), exposed for evaluation:
/// round(fraction * n_c) of every class goes to validation. Throws if
/// any class would end up empty on either side.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    const Dataset& dataset, double validation_fraction, std::uint64_t seed);

/// Mean loss and accuracy of the network on a sample set.
std::pair<double, double> evaluate(const Network& net, const Dataset& dataset,
                                   std::span<const std::size_t> indices);

}  // namespace neural
}  // namespace bodyshape
