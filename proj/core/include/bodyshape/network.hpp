#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bodyshape/layers.hpp"
#include "bodyshape/shape_label.hpp"
#include "bodyshape/tensor.hpp"

namespace bodyshape {
namespace neural {

/// Ordered layer stack classifying into the five shape classes. Layer
/// shapes must compose from the input spec to a final {5} output; this
/// is validated at construction.
class Network {
 public:
  Network(std::string arch, std::vector<std::size_t> input_shape,
          std::vector<std::unique_ptr<Layer>> layers);
  Network(const Network& other);
  Network& operator=(const Network& other);
  Network(Network&&) = default;
  Network& operator=(Network&&) = default;

  const std::string& arch() const { return arch_; }
  const std::vector<std::size_t>& input_shape() const { return input_shape_; }
  std::vector<std::unique_ptr<Layer>>& layers() { return layers_; }
  const std::vector<std::unique_ptr<Layer>>& layers() const { return layers_; }

  /// Pure inference; safe on a shared immutable network.
  Tensor infer(const Tensor& x) const;

  /// Training-mode forward (caches per layer) and matching backward.
  Tensor forward(const Tensor& x);
  void backward(const Tensor& grad_logits);
  void zero_grads();

  /// Depth-first list of parameterized leaf layers.
  std::vector<Layer*> param_layers();
  std::vector<const Layer*> param_layers() const;

 private:
  void validate() const;
  void check_input(const Tensor& x) const;

  std::string arch_;
  std::vector<std::size_t> input_shape_;
  std::vector<std::unique_ptr<Layer>> layers_;
};

/// Which top-level layers to freeze.
struct FreezeSpec {
  enum class Kind { None, All, FirstN, LastN, Indices } kind = Kind::None;
  std::size_t n = 0;
  std::vector<std::size_t> indices;

  static FreezeSpec none() { return {}; }
  static FreezeSpec all() { return {Kind::All, 0, {}}; }
  static FreezeSpec first(std::size_t n) { return {Kind::FirstN, n, {}}; }
  static FreezeSpec last(std::size_t n) { return {Kind::LastN, n, {}}; }
  static FreezeSpec at(std::vector<std::size_t> idx) { return {Kind::Indices, 0, std::move(idx)}; }
};

/// Returns a copy of the network with frozen flags set accordingly;
/// "last n" counts from the output end. Out-of-range counts or indices
/// throw std::invalid_argument.
Network freeze_layers(const Network& net, const FreezeSpec& spec);

/// Numerically stable softmax.
std::vector<double> softmax(const std::vector<double>& logits);

/// Argmax of softmax(logits); ties resolve to the lowest ordinal.
std::pair<ShapeLabel, std::vector<double>> predict(const Network& net, const Tensor& x);

}  // namespace neural
}  // namespace bodyshape
