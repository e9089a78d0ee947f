#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bodyshape/rng.hpp"
#include "bodyshape/tensor.hpp"

namespace bodyshape {
namespace neural {

/// One network layer. `infer` is pure and safe to call concurrently on a
/// shared layer; `forward` additionally caches the input for `backward`
/// and requires exclusive ownership (training). `backward` accumulates
/// parameter gradients (skipped while frozen) and returns the gradient
/// with respect to the input.
class Layer {
 public:
  virtual ~Layer() = default;

  virtual std::string kind() const = 0;
  virtual std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const = 0;
  virtual Tensor infer(const Tensor& x) const = 0;

  virtual Tensor forward(const Tensor& x) {
    cached_input_ = x;
    return infer(x);
  }
  virtual Tensor backward(const Tensor& grad_out) = 0;

  virtual std::span<double> weights() { return {}; }
  virtual std::span<double> biases() { return {}; }
  virtual std::span<double> weight_grads() { return {}; }
  virtual std::span<double> bias_grads() { return {}; }
  virtual std::span<const double> weights() const { return {}; }
  virtual std::span<const double> biases() const { return {}; }

  /// Shape-describing integers, in constructor-argument order.
  virtual std::vector<std::size_t> shape_params() const { return {}; }

  /// Direct children of composite layers (residual / inception branches).
  virtual std::vector<Layer*> children() { return {}; }
  virtual std::vector<const Layer*> children() const { return {}; }

  virtual void zero_grads();
  virtual void init_params(SplitMix64& rng);
  virtual std::unique_ptr<Layer> clone() const = 0;

  bool frozen() const { return frozen_; }
  void set_frozen(bool f) { frozen_ = f; }

  /// Sets the flag on this layer and every nested layer.
  void set_frozen_recursive(bool f) {
    set_frozen(f);
    for (Layer* child : children()) child->set_frozen_recursive(f);
  }

 protected:
  Tensor cached_input_;
  bool frozen_ = false;
};

class DenseLayer final : public Layer {
 public:
  DenseLayer(std::size_t in, std::size_t out);

  std::string kind() const override { return "dense"; }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const override;
  Tensor infer(const Tensor& x) const override;
  Tensor backward(const Tensor& grad_out) override;

  std::span<double> weights() override { return weights_; }
  std::span<double> biases() override { return biases_; }
  std::span<double> weight_grads() override { return wgrad_; }
  std::span<double> bias_grads() override { return bgrad_; }
  std::span<const double> weights() const override { return weights_; }
  std::span<const double> biases() const override { return biases_; }
  std::vector<std::size_t> shape_params() const override { return {in_, out_}; }
  void init_params(SplitMix64& rng) override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<DenseLayer>(*this); }

 private:
  std::size_t in_, out_;
  std::vector<double> weights_, biases_, wgrad_, bgrad_;  // weights are out x in
};

class Conv2dLayer final : public Layer {
 public:
  Conv2dLayer(std::size_t in_ch, std::size_t out_ch, std::size_t kernel, std::size_t stride = 1,
              std::size_t pad = 0);

  std::string kind() const override { return "conv2d"; }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const override;
  Tensor infer(const Tensor& x) const override;
  Tensor backward(const Tensor& grad_out) override;

  std::span<double> weights() override { return weights_; }
  std::span<double> biases() override { return biases_; }
  std::span<double> weight_grads() override { return wgrad_; }
  std::span<double> bias_grads() override { return bgrad_; }
  std::span<const double> weights() const override { return weights_; }
  std::span<const double> biases() const override { return biases_; }
  std::vector<std::size_t> shape_params() const override {
    return {in_ch_, out_ch_, kernel_, stride_, pad_};
  }
  void init_params(SplitMix64& rng) override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<Conv2dLayer>(*this); }

 private:
  std::size_t in_ch_, out_ch_, kernel_, stride_, pad_;
  std::vector<double> weights_, biases_, wgrad_, bgrad_;  // weights: out x in x k x k
};

class MaxPool2dLayer final : public Layer {
 public:
  MaxPool2dLayer(std::size_t size, std::size_t stride);

  std::string kind() const override { return "maxpool2d"; }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const override;
  Tensor infer(const Tensor& x) const override;
  Tensor backward(const Tensor& grad_out) override;
  std::vector<std::size_t> shape_params() const override { return {size_, stride_}; }
  std::unique_ptr<Layer> clone() const override { return std::make_unique<MaxPool2dLayer>(*this); }

 private:
  std::size_t size_, stride_;
};

class ReluLayer final : public Layer {
 public:
  std::string kind() const override { return "relu"; }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const override {
    return in;
  }
  Tensor infer(const Tensor& x) const override;
  Tensor backward(const Tensor& grad_out) override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<ReluLayer>(*this); }
};

class FlattenLayer final : public Layer {
 public:
  std::string kind() const override { return "flatten"; }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const override;
  Tensor infer(const Tensor& x) const override;
  Tensor backward(const Tensor& grad_out) override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<FlattenLayer>(*this); }
};

/// y = inner(x) + x; the inner stack must preserve the input shape.
class ResidualBlock final : public Layer {
 public:
  explicit ResidualBlock(std::vector<std::unique_ptr<Layer>> inner);
  ResidualBlock(const ResidualBlock& other);

  std::string kind() const override { return "residual"; }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const override;
  Tensor infer(const Tensor& x) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_out) override;

  std::vector<Layer*> children() override;
  std::vector<const Layer*> children() const override;
  void zero_grads() override;
  void init_params(SplitMix64& rng) override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<ResidualBlock>(*this); }

 private:
  std::vector<std::unique_ptr<Layer>> inner_;
};

/// Runs each branch on the input and concatenates branch outputs along
/// the channel axis; branches must agree on spatial dimensions.
class InceptionBlock final : public Layer {
 public:
  explicit InceptionBlock(std::vector<std::vector<std::unique_ptr<Layer>>> branches);
  InceptionBlock(const InceptionBlock& other);

  std::string kind() const override { return "inception"; }
  std::vector<std::size_t> output_shape(const std::vector<std::size_t>& in) const override;
  Tensor infer(const Tensor& x) const override;
  Tensor forward(const Tensor& x) override;
  Tensor backward(const Tensor& grad_out) override;

  std::size_t branch_count() const { return branches_.size(); }
  const std::vector<std::unique_ptr<Layer>>& branch(std::size_t i) const { return branches_[i]; }

  std::vector<Layer*> children() override;
  std::vector<const Layer*> children() const override;
  void zero_grads() override;
  void init_params(SplitMix64& rng) override;
  std::unique_ptr<Layer> clone() const override { return std::make_unique<InceptionBlock>(*this); }

 private:
  std::vector<std::vector<std::unique_ptr<Layer>>> branches_;
};

/// Depth-first visit of every parameterized layer, composites included.
void for_each_param_layer(Layer& layer, const std::function<void(Layer&)>& fn);

}  // namespace neural
}  // namespace bodyshape
