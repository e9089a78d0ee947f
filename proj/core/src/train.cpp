#include "bodyshape/train.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bodyshape/rng.hpp"

namespace bodyshape {
namespace neural {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0)) throw std::invalid_argument("learning rate must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("momentum must be in [0,1)");
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw std::invalid_argument("validation fraction must be in (0,1)");
  }
}

namespace {

double sample_loss_and_backprop(Network& net, const Sample& sample, double inv_batch) {
  if (sample.label < 0 || sample.label >= static_cast<int>(kShapeLabelCount)) {
    throw std::invalid_argument("train: label outside 0..4");
  }
  const Tensor logits = net.forward(sample.input);
  const std::vector<double> probs = softmax(logits.data);
  const double loss = -std::log(std::max(probs[static_cast<std::size_t>(sample.label)], 1e-300));

  Tensor grad(logits.shape);
  for (std::size_t i = 0; i < probs.size(); ++i) grad.data[i] = probs[i] * inv_batch;
  grad.data[static_cast<std::size_t>(sample.label)] -= inv_batch;
  net.backward(grad);
  return loss;
}

}  // namespace

double loss_and_grad(Network& net, std::span<const Sample> batch) {
  if (batch.empty()) throw std::invalid_argument("loss_and_grad: empty batch");
  net.zero_grads();
  const double inv = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (const Sample& s : batch) total += sample_loss_and_backprop(net, s, inv);
  return total * inv;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    const Dataset& dataset, double validation_fraction, std::uint64_t seed) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < dataset.size(); ++i) by_class[dataset[i].label].push_back(i);

  std::vector<std::size_t> train_idx, val_idx;
  for (auto& [label, indices] : by_class) {
    SplitMix64 rng(derive_seed(seed, 0x5b17ULL, static_cast<std::uint64_t>(label)));
    for (std::size_t i = indices.size(); i > 1; --i) {
      std::swap(indices[i - 1], indices[rng.next_below(i)]);
    }
    const auto n_val = static_cast<std::size_t>(
        std::llround(validation_fraction * static_cast<double>(indices.size())));
    if (n_val == 0 || n_val >= indices.size()) {
      throw std::invalid_argument("stratified_split: empty class after split");
    }
    val_idx.insert(val_idx.end(), indices.begin(), indices.begin() + static_cast<long>(n_val));
    train_idx.insert(train_idx.end(), indices.begin() + static_cast<long>(n_val), indices.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
  return {train_idx, val_idx};
}

std::pair<double, double> evaluate(const Network& net, const Dataset& dataset,
                                   std::span<const std::size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("evaluate: no samples");
  double loss = 0.0;
  std::size_t correct = 0;
  for (std::size_t i : indices) {
    const Tensor logits = net.infer(dataset[i].input);
    const std::vector<double> probs = softmax(logits.data);
    loss += -std::log(std::max(probs[static_cast<std::size_t>(dataset[i].label)], 1e-300));
    std::size_t arg = 0;
    for (std::size_t j = 1; j < probs.size(); ++j) {
      if (probs[j] > probs[arg]) arg = j;
    }
    if (static_cast<int>(arg) == dataset[i].label) ++correct;
  }
  const double n = static_cast<double>(indices.size());
  return {loss / n, static_cast<double>(correct) / n};
}

std::pair<Network, LossCurve> train(const Network& net, const Dataset& dataset,
                                    const TrainConfig& cfg) {
  cfg.validate();
  if (dataset.empty()) throw std::invalid_argument("train: empty dataset");

  auto [train_idx, val_idx] = stratified_split(dataset, cfg.validation_fraction, cfg.seed);

  Network model = net;
  const std::vector<Layer*> params = model.param_layers();

  // Momentum buffers parallel to every parameter array, traversal order.
  std::vector<std::vector<double>> vel_w(params.size()), vel_b(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    vel_w[i].assign(params[i]->weights().size(), 0.0);
    vel_b[i].assign(params[i]->biases().size(), 0.0);
  }

  LossCurve curve;
  std::vector<std::size_t> order = train_idx;
  std::vector<Sample> batch;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    SplitMix64 shuffle(derive_seed(cfg.seed, 0xe90cULL, epoch));
    order = train_idx;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle.next_below(i)]);
    }

    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(dataset[order[i]]);
      epoch_loss += loss_and_grad(model, batch);
      ++batches;

      for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i]->frozen()) continue;
        auto w = params[i]->weights();
        auto wg = params[i]->weight_grads();
        for (std::size_t j = 0; j < w.size(); ++j) {
          vel_w[i][j] = cfg.momentum * vel_w[i][j] - cfg.learning_rate * wg[j];
          w[j] += vel_w[i][j];
        }
        auto b = params[i]->biases();
        auto bg = params[i]->bias_grads();
        for (std::size_t j = 0; j < b.size(); ++j) {
          vel_b[i][j] = cfg.momentum * vel_b[i][j] - cfg.learning_rate * bg[j];
          b[j] += vel_b[i][j];
        }
      }
    }

    const auto [val_loss, val_acc] = evaluate(model, dataset, val_idx);
    curve.train_loss.push_back(epoch_loss / static_cast<double>(batches));
    curve.val_loss.push_back(val_loss);
    curve.val_accuracy.push_back(val_acc);
  }
  return {std::move(model), std::move(curve)};
}

}  // namespace neural
}  // namespace bodyshape
