#include "bodyshape/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bodyshape {
namespace stats {

double squared_distance(const double* a, const double* b, std::size_t d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

EigenDecomposition jacobi_eigen_symmetric(const std::vector<double>& matrix, std::size_t dim) {
  if (matrix.size() != dim * dim) throw std::invalid_argument("matrix size mismatch");

  std::vector<double> a = matrix;
  std::vector<double> v(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) v[i * dim + i] = 1.0;

  const auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) s += a[p * dim + q] * a[p * dim + q];
    }
    return std::sqrt(2.0 * s);
  };

  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  const double tol = 1e-10 * std::max(1.0, scale);

  for (int sweep = 0; sweep < 128 && off_norm() > tol; ++sweep) {
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = a[p * dim + q];
        if (apq == 0.0) continue;
        const double app = a[p * dim + p];
        const double aqq = a[q * dim + q];

        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < dim; ++k) {
          const double akp = a[k * dim + p];
          const double akq = a[k * dim + q];
          a[k * dim + p] = c * akp - s * akq;
          a[k * dim + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double apk = a[p * dim + k];
          const double aqk = a[q * dim + k];
          a[p * dim + k] = c * apk - s * aqk;
          a[q * dim + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double vkp = v[k * dim + p];
          const double vkq = v[k * dim + q];
          v[k * dim + p] = c * vkp - s * vkq;
          v[k * dim + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * dim + i] > a[j * dim + j];
  });

  EigenDecomposition out;
  out.eigenvalues.resize(dim);
  out.eigenvectors.assign(dim * dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a[src * dim + src];

    // Sign convention: largest-magnitude entry positive.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double mag = std::abs(v[i * dim + src]);
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    const double sign = v[arg * dim + src] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < dim; ++i) out.eigenvectors[i * dim + j] = sign * v[i * dim + src];
  }
  return out;
}

}  // namespace stats
}  // namespace bodyshape
