#pragma once

#include <cstddef>
#include <vector>

namespace bodyshape {
namespace stats {

/// Row-major sample matrix: n rows (samples) by d columns (features).
struct DataMatrix {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> values;

  DataMatrix() = default;
  DataMatrix(std::size_t rows, std::size_t cols) : n(rows), d(cols), values(rows * cols, 0.0) {}

  double& at(std::size_t row, std::size_t col) { return values[row * d + col]; }
  double at(std::size_t row, std::size_t col) const { return values[row * d + col]; }

  std::vector<double> row(std::size_t r) const {
    return {values.begin() + static_cast<long>(r * d),
            values.begin() + static_cast<long>((r + 1) * d)};
  }
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;   // descending
  std::vector<double> eigenvectors;  // d x d, column j is the j-th eigenvector
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major,
/// dim x dim). Sweeps run until the off-diagonal Frobenius norm drops
/// below 1e-10 relative to the matrix scale. Eigenvalues come back in
/// descending order and each eigenvector's largest-magnitude entry is
/// made positive, so the decomposition is deterministic.
EigenDecomposition jacobi_eigen_symmetric(const std::vector<double>& matrix, std::size_t dim);

double squared_distance(const double* a, const double* b, std::size_t d);

}  // namespace stats
}  // namespace bodyshape
