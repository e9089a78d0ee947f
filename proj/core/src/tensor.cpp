#include "bodyshape/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bodyshape {
namespace neural {

std::size_t shape_numel(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t e : shape) n *= e;
  return shape.empty() ? 0 : n;
}

Tensor::Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
  data.assign(shape_numel(shape), 0.0);
}

void check_finite(const Tensor& t, const char* what) {
  for (double v : t.data) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": non-finite tensor value");
    }
  }
}

}  // namespace neural
}  // namespace bodyshape
