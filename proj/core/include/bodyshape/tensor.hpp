#pragma once

#include <cstddef>
#include <vector>

namespace bodyshape {
namespace neural {

/// Dense row-major tensor of doubles.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s);

  std::size_t numel() const { return data.size(); }

  bool operator==(const Tensor&) const = default;
};

std::size_t shape_numel(const std::vector<std::size_t>& shape);

/// Throws std::invalid_argument if any entry is NaN or infinite.
void check_finite(const Tensor& t, const char* what);

}  // namespace neural
}  // namespace bodyshape
