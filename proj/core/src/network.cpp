#include "bodyshape/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bodyshape {
namespace neural {

Network::Network(std::string arch, std::vector<std::size_t> input_shape,
                 std::vector<std::unique_ptr<Layer>> layers)
    : arch_(std::move(arch)), input_shape_(std::move(input_shape)), layers_(std::move(layers)) {
  validate();
}

Network::Network(const Network& other) : arch_(other.arch_), input_shape_(other.input_shape_) {
  layers_.reserve(other.layers_.size());
  for (const auto& l : other.layers_) layers_.push_back(l->clone());
}

Network& Network::operator=(const Network& other) {
  if (this != &other) {
    Network copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void Network::validate() const {
  if (layers_.empty()) throw std::invalid_argument("network needs at least one layer");
  std::vector<std::size_t> shape = input_shape_;
  for (const auto& l : layers_) shape = l->output_shape(shape);
  if (shape_numel(shape) != kShapeLabelCount || shape.size() != 1) {
    throw std::invalid_argument("network must end in a 5-logit output");
  }
}

void Network::check_input(const Tensor& x) const {
  if (x.shape != input_shape_) throw std::invalid_argument("input does not match network spec");
  check_finite(x, "network input");
}

Tensor Network::infer(const Tensor& x) const {
  check_input(x);
  Tensor t = x;
  for (const auto& l : layers_) t = l->infer(t);
  return t;
}

Tensor Network::forward(const Tensor& x) {
  check_input(x);
  Tensor t = x;
  for (auto& l : layers_) t = l->forward(t);
  return t;
}

void Network::backward(const Tensor& grad_logits) {
  Tensor g = grad_logits;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
}

void Network::zero_grads() {
  for (auto& l : layers_) l->zero_grads();
}

std::vector<Layer*> Network::param_layers() {
  std::vector<Layer*> out;
  for (auto& l : layers_) {
    for_each_param_layer(*l, [&](Layer& leaf) { out.push_back(&leaf); });
  }
  return out;
}

std::vector<const Layer*> Network::param_layers() const {
  std::vector<const Layer*> out;
  for (const auto& l : layers_) {
    for_each_param_layer(const_cast<Layer&>(*l), [&](Layer& leaf) { out.push_back(&leaf); });
  }
  return out;
}

Network freeze_layers(const Network& net, const FreezeSpec& spec) {
  Network out = net;
  auto& layers = out.layers();
  const std::size_t count = layers.size();

  const auto freeze_range = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) layers[i]->set_frozen_recursive(true);
  };

  for (auto& l : layers) l->set_frozen_recursive(false);
  switch (spec.kind) {
    case FreezeSpec::Kind::None:
      break;
    case FreezeSpec::Kind::All:
      freeze_range(0, count);
      break;
    case FreezeSpec::Kind::FirstN:
      if (spec.n > count) throw std::invalid_argument("freeze_layers: n exceeds layer count");
      freeze_range(0, spec.n);
      break;
    case FreezeSpec::Kind::LastN:
      if (spec.n > count) throw std::invalid_argument("freeze_layers: n exceeds layer count");
      freeze_range(count - spec.n, count);
      break;
    case FreezeSpec::Kind::Indices:
      for (std::size_t i : spec.indices) {
        if (i >= count) throw std::invalid_argument("freeze_layers: index out of range");
        layers[i]->set_frozen_recursive(true);
      }
      break;
  }
  return out;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

std::pair<ShapeLabel, std::vector<double>> predict(const Network& net, const Tensor& x) {
  const Tensor logits = net.infer(x);
  const std::vector<double> probs = softmax(logits.data);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[arg]) arg = i;  // strict: ties keep the lowest ordinal
  }
  return {shape_label_from_ordinal(static_cast<int>(arg)), probs};
}

}  // namespace neural
}  // namespace bodyshape
