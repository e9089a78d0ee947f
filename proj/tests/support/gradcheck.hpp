#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "bodyshape/layers.hpp"
#include "bodyshape/rng.hpp"

namespace bodyshape::testing {

// Central finite-difference gradient oracle. The scalar objective is
// L = sum_i r_i * out_i for a fixed random projection r, so dL/dout = r
// feeds backward() directly and every parameter and input entry can be
// checked independently of the loss head.
struct GradCheck {
  static constexpr double kEps = 1e-4;
  double max_rel_err = 0.0;
  std::size_t checked = 0;

  static double rel_err(double analytic, double numeric) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-2});
    return std::abs(analytic - numeric) / denom;
  }

  void record(double analytic, double numeric) {
    max_rel_err = std::max(max_rel_err, rel_err(analytic, numeric));
    ++checked;
  }
};

inline double projected_output(neural::Layer& layer, const neural::Tensor& x,
                               const std::vector<double>& r) {
  const neural::Tensor out = layer.infer(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < out.numel(); ++i) acc += r[i] * out.data[i];
  return acc;
}

// Checks analytic input and parameter gradients of `layer` at `x`
// against central differences.
inline GradCheck check_layer_gradients(neural::Layer& layer, neural::Tensor x, SplitMix64& rng) {
  GradCheck result;

  const neural::Tensor out = layer.forward(x);
  std::vector<double> r(out.numel());
  for (double& v : r) v = rng.uniform(-1.0, 1.0);

  layer.zero_grads();
  neural::Tensor grad_out(out.shape);
  grad_out.data = r;
  const neural::Tensor dx = layer.backward(grad_out);

  for (std::size_t i = 0; i < x.numel(); ++i) {
    const double keep = x.data[i];
    x.data[i] = keep + GradCheck::kEps;
    const double up = projected_output(layer, x, r);
    x.data[i] = keep - GradCheck::kEps;
    const double dn = projected_output(layer, x, r);
    x.data[i] = keep;
    result.record(dx.data[i], (up - dn) / (2.0 * GradCheck::kEps));
  }

  std::vector<neural::Layer*> param_layers;
  neural::for_each_param_layer(layer, [&](neural::Layer& l) { param_layers.push_back(&l); });
  for (neural::Layer* pl : param_layers) {
    for (auto [values, grads] :
         {std::pair(pl->weights(), pl->weight_grads()), std::pair(pl->biases(), pl->bias_grads())}) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double keep = values[i];
        values[i] = keep + GradCheck::kEps;
        const double up = projected_output(layer, x, r);
        values[i] = keep - GradCheck::kEps;
        const double dn = projected_output(layer, x, r);
        values[i] = keep;
        result.record(grads[i], (up - dn) / (2.0 * GradCheck::kEps));
      }
    }
  }
  return result;
}

// Random input with entries kept away from zero (ReLU kink safety).
inline neural::Tensor kink_safe_input(const std::vector<std::size_t>& shape, SplitMix64& rng) {
  neural::Tensor x(shape);
  for (double& v : x.data) {
    const double mag = rng.uniform(0.05, 1.0);
    v = rng.next_double() < 0.5 ? -mag : mag;
  }
  return x;
}

// One randomized configuration of each layer kind. `which` selects the
// kind; the geometry is drawn from rng.
inline std::pair<std::unique_ptr<neural::Layer>, neural::Tensor> random_layer_config(
    const std::string& which, SplitMix64& rng) {
  using namespace neural;
  const auto ch = [&](std::size_t lo, std::size_t hi) { return lo + rng.next_below(hi - lo + 1); };

  if (which == "dense") {
    const std::size_t in = ch(1, 12), out = ch(1, 8);
    auto layer = std::make_unique<DenseLayer>(in, out);
    layer->init_params(rng);
    return {std::move(layer), kink_safe_input({in}, rng)};
  }
  if (which == "conv2d") {
    const std::size_t cin = ch(1, 3), cout = ch(1, 3), k = ch(1, 3);
    const std::size_t stride = ch(1, 2), pad = ch(0, 1);
    const std::size_t h = std::max<std::size_t>(k + 2, ch(4, 8));
    const std::size_t w = std::max<std::size_t>(k + 2, ch(4, 8));
    auto layer = std::make_unique<Conv2dLayer>(cin, cout, k, stride, pad);
    layer->init_params(rng);
    return {std::move(layer), kink_safe_input({cin, h, w}, rng)};
  }
  if (which == "maxpool2d") {
    const std::size_t size = ch(2, 3), stride = ch(1, 2);
    const std::size_t c = ch(1, 3), h = ch(size + 2, 8), w = ch(size + 2, 8);
    auto layer = std::make_unique<MaxPool2dLayer>(size, stride);
    // Distinct values so +-eps never flips a window argmax.
    Tensor x({c, h, w});
    std::vector<std::size_t> order(x.numel());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.next_below(i)]);
    }
    for (std::size_t i = 0; i < x.numel(); ++i) {
      x.data[order[i]] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(x.numel()) +
                         0.001 * rng.next_double();
    }
    return {std::move(layer), std::move(x)};
  }
  if (which == "relu") {
    const std::size_t n = ch(1, 24);
    return {std::make_unique<ReluLayer>(), kink_safe_input({n}, rng)};
  }
  if (which == "flatten") {
    const std::size_t c = ch(1, 3), h = ch(2, 5), w = ch(2, 5);
    return {std::make_unique<FlattenLayer>(), kink_safe_input({c, h, w}, rng)};
  }
  if (which == "residual") {
    const std::size_t c = ch(1, 3), h = ch(4, 6), w = ch(4, 6);
    std::vector<std::unique_ptr<Layer>> inner;
    inner.push_back(std::make_unique<Conv2dLayer>(c, c, 3, 1, 1));
    inner.push_back(std::make_unique<ReluLayer>());
    inner.push_back(std::make_unique<Conv2dLayer>(c, c, 3, 1, 1));
    auto block = std::make_unique<ResidualBlock>(std::move(inner));
    block->init_params(rng);

    // The inner ReLU sees the first conv's output; keep every
    // preactivation clear of the kink so +-eps wiggles stay one-sided.
    Tensor x;
    for (int attempt = 0; attempt < 256; ++attempt) {
      x = kink_safe_input({c, h, w}, rng);
      const Tensor pre = block->children()[0]->infer(x);
      double margin = std::numeric_limits<double>::infinity();
      for (double v : pre.data) margin = std::min(margin, std::abs(v));
      if (margin > 5e-3) break;
    }
    return {std::move(block), std::move(x)};
  }
  if (which == "inception") {
    const std::size_t c = ch(1, 2), h = ch(5, 7), w = ch(5, 7);
    std::vector<std::vector<std::unique_ptr<Layer>>> branches;
    for (std::size_t kernel : {1u, 3u, 5u}) {
      std::vector<std::unique_ptr<Layer>> b;
      b.push_back(std::make_unique<Conv2dLayer>(c, ch(1, 3), kernel, 1, kernel / 2));
      branches.push_back(std::move(b));
    }
    auto block = std::make_unique<InceptionBlock>(std::move(branches));
    block->init_params(rng);
    return {std::move(block), kink_safe_input({c, h, w}, rng)};
  }
  throw std::invalid_argument("unknown layer kind for grad check: " + which);
}

inline const std::vector<std::string>& grad_check_kinds() {
  static const std::vector<std::string> kinds = {"dense",   "conv2d",   "maxpool2d", "relu",
                                                 "flatten", "residual", "inception"};
  return kinds;
}

}  // namespace bodyshape::testing
