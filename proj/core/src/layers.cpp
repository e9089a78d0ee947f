#include "bodyshape/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bodyshape {
namespace neural {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void fill_uniform(std::vector<double>& v, double bound, SplitMix64& rng) {
  for (double& x : v) x = rng.uniform(-bound, bound);
}

// Uniform init in +-sqrt(6 / (fan_in + fan_out)).
double glorot_bound(std::size_t fan_in, std::size_t fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

}  // namespace

void Layer::zero_grads() {
  auto wg = weight_grads();
  auto bg = bias_grads();
  std::fill(wg.begin(), wg.end(), 0.0);
  std::fill(bg.begin(), bg.end(), 0.0);
}

void Layer::init_params(SplitMix64&) {}

// ---------------------------------------------------------------- Dense

DenseLayer::DenseLayer(std::size_t in, std::size_t out) : in_(in), out_(out) {
  require(in >= 1 && out >= 1, "dense layer needs positive sizes");
  weights_.assign(out * in, 0.0);
  biases_.assign(out, 0.0);
  wgrad_.assign(out * in, 0.0);
  bgrad_.assign(out, 0.0);
}

std::vector<std::size_t> DenseLayer::output_shape(const std::vector<std::size_t>& in) const {
  require(shape_numel(in) == in_, "dense layer input size mismatch");
  return {out_};
}

Tensor DenseLayer::infer(const Tensor& x) const {
  require(x.numel() == in_, "dense layer input size mismatch");
  Tensor y({out_});
  for (std::size_t o = 0; o < out_; ++o) {
    double acc = biases_[o];
    const double* row = weights_.data() + o * in_;
    for (std::size_t i = 0; i < in_; ++i) acc += row[i] * x.data[i];
    y.data[o] = acc;
  }
  return y;
}

Tensor DenseLayer::backward(const Tensor& grad_out) {
  require(grad_out.numel() == out_, "dense layer gradient size mismatch");
  const Tensor& x = cached_input_;
  Tensor dx(x.shape);
  for (std::size_t o = 0; o < out_; ++o) {
    const double g = grad_out.data[o];
    const double* row = weights_.data() + o * in_;
    double* wg = wgrad_.data() + o * in_;
    if (!frozen_) {
      bgrad_[o] += g;
      for (std::size_t i = 0; i < in_; ++i) wg[i] += g * x.data[i];
    }
    for (std::size_t i = 0; i < in_; ++i) dx.data[i] += g * row[i];
  }
  return dx;
}

// ---------------------------------------------------------------- Conv2d

Conv2dLayer::Conv2dLayer(std::size_t in_ch, std::size_t out_ch, std::size_t kernel,
                         std::size_t stride, std::size_t pad)
    : in_ch_(in_ch), out_ch_(out_ch), kernel_(kernel), stride_(stride), pad_(pad) {
  require(in_ch >= 1 && out_ch >= 1 && kernel >= 1 && stride >= 1, "bad conv2d geometry");
  weights_.assign(out_ch * in_ch * kernel * kernel, 0.0);
  biases_.assign(out_ch, 0.0);
  wgrad_.assign(weights_.size(), 0.0);
  bgrad_.assign(biases_.size(), 0.0);
}

std::vector<std::size_t> Conv2dLayer::output_shape(const std::vector<std::size_t>& in) const {
  require(in.size() == 3 && in[0] == in_ch_, "conv2d input must be [C,H,W]");
  const std::size_t h = in[1] + 2 * pad_;
  const std::size_t w = in[2] + 2 * pad_;
  require(h >= kernel_ && w >= kernel_, "conv2d kernel larger than padded input");
  return {out_ch_, (h - kernel_) / stride_ + 1, (w - kernel_) / stride_ + 1};
}

Tensor Conv2dLayer::infer(const Tensor& x) const {
  const auto out_shape = output_shape(x.shape);
  const std::size_t ih = x.shape[1], iw = x.shape[2];
  const std::size_t oh = out_shape[1], ow = out_shape[2];

  Tensor y(out_shape);
  for (std::size_t o = 0; o < out_ch_; ++o) {
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        double acc = biases_[o];
        for (std::size_t c = 0; c < in_ch_; ++c) {
          for (std::size_t ky = 0; ky < kernel_; ++ky) {
            const long iy = static_cast<long>(oy * stride_ + ky) - static_cast<long>(pad_);
            if (iy < 0 || iy >= static_cast<long>(ih)) continue;
            const double* xrow = x.data.data() + (c * ih + static_cast<std::size_t>(iy)) * iw;
            const double* wrow = weights_.data() + ((o * in_ch_ + c) * kernel_ + ky) * kernel_;
            for (std::size_t kx = 0; kx < kernel_; ++kx) {
              const long ix = static_cast<long>(ox * stride_ + kx) - static_cast<long>(pad_);
              if (ix < 0 || ix >= static_cast<long>(iw)) continue;
              acc += wrow[kx] * xrow[ix];
            }
          }
        }
        y.data[(o * oh + oy) * ow + ox] = acc;
      }
    }
  }
  return y;
}

Tensor Conv2dLayer::backward(const Tensor& grad_out) {
  const Tensor& x = cached_input_;
  const auto out_shape = output_shape(x.shape);
  require(grad_out.shape == out_shape, "conv2d gradient shape mismatch");
  const std::size_t ih = x.shape[1], iw = x.shape[2];
  const std::size_t oh = out_shape[1], ow = out_shape[2];

  Tensor dx(x.shape);
  for (std::size_t o = 0; o < out_ch_; ++o) {
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        const double g = grad_out.data[(o * oh + oy) * ow + ox];
        if (!frozen_) bgrad_[o] += g;
        for (std::size_t c = 0; c < in_ch_; ++c) {
          for (std::size_t ky = 0; ky < kernel_; ++ky) {
            const long iy = static_cast<long>(oy * stride_ + ky) - static_cast<long>(pad_);
            if (iy < 0 || iy >= static_cast<long>(ih)) continue;
            const std::size_t xbase = (c * ih + static_cast<std::size_t>(iy)) * iw;
            const std::size_t wbase = ((o * in_ch_ + c) * kernel_ + ky) * kernel_;
            for (std::size_t kx = 0; kx < kernel_; ++kx) {
              const long ix = static_cast<long>(ox * stride_ + kx) - static_cast<long>(pad_);
              if (ix < 0 || ix >= static_cast<long>(iw)) continue;
              if (!frozen_) wgrad_[wbase + kx] += g * x.data[xbase + static_cast<std::size_t>(ix)];
              dx.data[xbase + static_cast<std::size_t>(ix)] += g * weights_[wbase + kx];
            }
          }
        }
      }
    }
  }
  return dx;
}

// ---------------------------------------------------------------- MaxPool

MaxPool2dLayer::MaxPool2dLayer(std::size_t size, std::size_t stride)
    : size_(size), stride_(stride) {
  require(size >= 1 && stride >= 1, "bad maxpool geometry");
}

std::vector<std::size_t> MaxPool2dLayer::output_shape(const std::vector<std::size_t>& in) const {
  require(in.size() == 3, "maxpool input must be [C,H,W]");
  require(in[1] >= size_ && in[2] >= size_, "maxpool window larger than input");
  return {in[0], (in[1] - size_) / stride_ + 1, (in[2] - size_) / stride_ + 1};
}

Tensor MaxPool2dLayer::infer(const Tensor& x) const {
  const auto out_shape = output_shape(x.shape);
  const std::size_t ih = x.shape[1], iw = x.shape[2];
  const std::size_t oh = out_shape[1], ow = out_shape[2];

  Tensor y(out_shape);
  for (std::size_t c = 0; c < x.shape[0]; ++c) {
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t ky = 0; ky < size_; ++ky) {
          for (std::size_t kx = 0; kx < size_; ++kx) {
            best = std::max(best, x.data[(c * ih + oy * stride_ + ky) * iw + ox * stride_ + kx]);
          }
        }
        y.data[(c * oh + oy) * ow + ox] = best;
      }
    }
  }
  return y;
}

Tensor MaxPool2dLayer::backward(const Tensor& grad_out) {
  const Tensor& x = cached_input_;
  const auto out_shape = output_shape(x.shape);
  require(grad_out.shape == out_shape, "maxpool gradient shape mismatch");
  const std::size_t ih = x.shape[1], iw = x.shape[2];
  const std::size_t oh = out_shape[1], ow = out_shape[2];

  Tensor dx(x.shape);
  for (std::size_t c = 0; c < x.shape[0]; ++c) {
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        // First maximum wins on ties, matching infer's scan order.
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t ky = 0; ky < size_; ++ky) {
          for (std::size_t kx = 0; kx < size_; ++kx) {
            const std::size_t idx = (c * ih + oy * stride_ + ky) * iw + ox * stride_ + kx;
            if (x.data[idx] > best) {
              best = x.data[idx];
              arg = idx;
            }
          }
        }
        dx.data[arg] += grad_out.data[(c * oh + oy) * ow + ox];
      }
    }
  }
  return dx;
}

// ---------------------------------------------------------------- ReLU

Tensor ReluLayer::infer(const Tensor& x) const {
  Tensor y = x;
  for (double& v : y.data) v = std::max(0.0, v);
  return y;
}

Tensor ReluLayer::backward(const Tensor& grad_out) {
  require(grad_out.numel() == cached_input_.numel(), "relu gradient size mismatch");
  Tensor dx(cached_input_.shape);
  for (std::size_t i = 0; i < dx.numel(); ++i) {
    dx.data[i] = cached_input_.data[i] > 0.0 ? grad_out.data[i] : 0.0;
  }
  return dx;
}

// ---------------------------------------------------------------- Flatten

std::vector<std::size_t> FlattenLayer::output_shape(const std::vector<std::size_t>& in) const {
  return {shape_numel(in)};
}

Tensor FlattenLayer::infer(const Tensor& x) const {
  Tensor y = x;
  y.shape = {x.numel()};
  return y;
}

Tensor FlattenLayer::backward(const Tensor& grad_out) {
  require(grad_out.numel() == cached_input_.numel(), "flatten gradient size mismatch");
  Tensor dx = grad_out;
  dx.shape = cached_input_.shape;
  return dx;
}

// ---------------------------------------------------------------- Residual

ResidualBlock::ResidualBlock(std::vector<std::unique_ptr<Layer>> inner)
    : inner_(std::move(inner)) {
  require(!inner_.empty(), "residual block needs inner layers");
}

ResidualBlock::ResidualBlock(const ResidualBlock& other) {
  frozen_ = other.frozen_;
  inner_.reserve(other.inner_.size());
  for (const auto& l : other.inner_) inner_.push_back(l->clone());
}

std::vector<std::size_t> ResidualBlock::output_shape(const std::vector<std::size_t>& in) const {
  std::vector<std::size_t> shape = in;
  for (const auto& l : inner_) shape = l->output_shape(shape);
  require(shape == in, "residual block must preserve its input shape");
  return shape;
}

Tensor ResidualBlock::infer(const Tensor& x) const {
  Tensor y = x;
  for (const auto& l : inner_) y = l->infer(y);
  require(y.shape == x.shape, "residual block must preserve its input shape");
  for (std::size_t i = 0; i < y.numel(); ++i) y.data[i] += x.data[i];
  return y;
}

Tensor ResidualBlock::forward(const Tensor& x) {
  Tensor y = x;
  for (auto& l : inner_) y = l->forward(y);
  require(y.shape == x.shape, "residual block must preserve its input shape");
  for (std::size_t i = 0; i < y.numel(); ++i) y.data[i] += x.data[i];
  return y;
}

Tensor ResidualBlock::backward(const Tensor& grad_out) {
  Tensor g = grad_out;
  for (auto it = inner_.rbegin(); it != inner_.rend(); ++it) g = (*it)->backward(g);
  require(g.shape == grad_out.shape, "residual block gradient shape mismatch");
  for (std::size_t i = 0; i < g.numel(); ++i) g.data[i] += grad_out.data[i];
  return g;
}

std::vector<Layer*> ResidualBlock::children() {
  std::vector<Layer*> out;
  for (auto& l : inner_) out.push_back(l.get());
  return out;
}

std::vector<const Layer*> ResidualBlock::children() const {
  std::vector<const Layer*> out;
  for (const auto& l : inner_) out.push_back(l.get());
  return out;
}

void ResidualBlock::zero_grads() {
  for (auto& l : inner_) l->zero_grads();
}

void ResidualBlock::init_params(SplitMix64& rng) {
  for (auto& l : inner_) l->init_params(rng);
}

// ---------------------------------------------------------------- Inception

InceptionBlock::InceptionBlock(std::vector<std::vector<std::unique_ptr<Layer>>> branches)
    : branches_(std::move(branches)) {
  require(!branches_.empty(), "inception block needs branches");
  for (const auto& b : branches_) require(!b.empty(), "inception branch cannot be empty");
}

InceptionBlock::InceptionBlock(const InceptionBlock& other) {
  frozen_ = other.frozen_;
  branches_.reserve(other.branches_.size());
  for (const auto& b : other.branches_) {
    std::vector<std::unique_ptr<Layer>> copy;
    copy.reserve(b.size());
    for (const auto& l : b) copy.push_back(l->clone());
    branches_.push_back(std::move(copy));
  }
}

std::vector<std::size_t> InceptionBlock::output_shape(const std::vector<std::size_t>& in) const {
  std::size_t channels = 0;
  std::vector<std::size_t> spatial;
  for (const auto& b : branches_) {
    std::vector<std::size_t> shape = in;
    for (const auto& l : b) shape = l->output_shape(shape);
    require(shape.size() == 3, "inception branches must output [C,H,W]");
    if (spatial.empty()) {
      spatial = {shape[1], shape[2]};
    } else {
      require(spatial[0] == shape[1] && spatial[1] == shape[2],
              "inception branches disagree on spatial size");
    }
    channels += shape[0];
  }
  return {channels, spatial[0], spatial[1]};
}

Tensor InceptionBlock::infer(const Tensor& x) const {
  const auto out_shape = output_shape(x.shape);
  Tensor y(out_shape);
  std::size_t ch_offset = 0;
  for (const auto& b : branches_) {
    Tensor t = x;
    for (const auto& l : b) t = l->infer(t);
    std::copy(t.data.begin(), t.data.end(),
              y.data.begin() + static_cast<long>(ch_offset * out_shape[1] * out_shape[2]));
    ch_offset += t.shape[0];
  }
  return y;
}

Tensor InceptionBlock::forward(const Tensor& x) {
  const auto out_shape = output_shape(x.shape);
  Tensor y(out_shape);
  std::size_t ch_offset = 0;
  for (auto& b : branches_) {
    Tensor t = x;
    for (auto& l : b) t = l->forward(t);
    std::copy(t.data.begin(), t.data.end(),
              y.data.begin() + static_cast<long>(ch_offset * out_shape[1] * out_shape[2]));
    ch_offset += t.shape[0];
  }
  cached_input_ = x;
  return y;
}

Tensor InceptionBlock::backward(const Tensor& grad_out) {
  const auto out_shape = output_shape(cached_input_.shape);
  require(grad_out.shape == out_shape, "inception gradient shape mismatch");
  const std::size_t plane = out_shape[1] * out_shape[2];

  Tensor dx(cached_input_.shape);
  std::size_t ch_offset = 0;
  for (auto& b : branches_) {
    std::vector<std::size_t> bshape = cached_input_.shape;
    for (const auto& l : b) bshape = l->output_shape(bshape);

    Tensor g(bshape);
    std::copy(grad_out.data.begin() + static_cast<long>(ch_offset * plane),
              grad_out.data.begin() + static_cast<long>((ch_offset + bshape[0]) * plane),
              g.data.begin());
    for (auto it = b.rbegin(); it != b.rend(); ++it) g = (*it)->backward(g);
    for (std::size_t i = 0; i < dx.numel(); ++i) dx.data[i] += g.data[i];
    ch_offset += bshape[0];
  }
  return dx;
}

std::vector<Layer*> InceptionBlock::children() {
  std::vector<Layer*> out;
  for (auto& b : branches_) {
    for (auto& l : b) out.push_back(l.get());
  }
  return out;
}

std::vector<const Layer*> InceptionBlock::children() const {
  std::vector<const Layer*> out;
  for (const auto& b : branches_) {
    for (const auto& l : b) out.push_back(l.get());
  }
  return out;
}

void InceptionBlock::zero_grads() {
  for (auto& b : branches_) {
    for (auto& l : b) l->zero_grads();
  }
}

void InceptionBlock::init_params(SplitMix64& rng) {
  for (auto& b : branches_) {
    for (auto& l : b) l->init_params(rng);
  }
}

// ---------------------------------------------------------------- init

void DenseLayer::init_params(SplitMix64& rng) {
  fill_uniform(weights_, glorot_bound(in_, out_), rng);
  std::fill(biases_.begin(), biases_.end(), 0.0);
}

void Conv2dLayer::init_params(SplitMix64& rng) {
  const std::size_t fan_in = in_ch_ * kernel_ * kernel_;
  const std::size_t fan_out = out_ch_ * kernel_ * kernel_;
  fill_uniform(weights_, glorot_bound(fan_in, fan_out), rng);
  std::fill(biases_.begin(), biases_.end(), 0.0);
}

void for_each_param_layer(Layer& layer, const std::function<void(Layer&)>& fn) {
  const auto kids = layer.children();
  if (kids.empty()) {
    if (!layer.weights().empty() || !layer.biases().empty()) fn(layer);
    return;
  }
  for (Layer* child : kids) for_each_param_layer(*child, fn);
}

}  // namespace neural
}  // namespace bodyshape
