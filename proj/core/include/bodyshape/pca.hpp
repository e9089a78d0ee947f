#pragma once

#include <cstddef>
#include <vector>

#include "bodyshape/linalg.hpp"

namespace bodyshape {
namespace stats {

/// How many principal components to keep.
struct PcaSelector {
  enum class Kind { FixedK, VarianceFraction } kind = Kind::FixedK;
  std::size_t k = 1;
  double theta = 0.85;

  static PcaSelector fixed(std::size_t k) { return {Kind::FixedK, k, 0.0}; }
  static PcaSelector variance(double theta) { return {Kind::VarianceFraction, 0, theta}; }
};

struct PcaModel {
  std::vector<double> means;       // d
  std::vector<double> scales;      // d, population sd with 0 -> 1
  std::vector<double> components;  // d x k, row-major, orthonormal columns
  std::vector<double> eigenvalues; // k, descending
  double total_variance = 0;       // sum of all d eigenvalues
  std::size_t d = 0;
  std::size_t k = 0;

  double explained_fraction() const;
};

/// PCA on column-standardized data (mean 0, population sd 1; zero-sd
/// columns scaled by 1). Components are the top eigenvectors of the
/// standardized covariance via Jacobi eigendecomposition. With a
/// variance-fraction selector, k is the smallest count reaching theta;
/// all-zero variance data keeps k = 1.
PcaModel pca_fit(const DataMatrix& X, const PcaSelector& selector);

/// Projects rows onto the component basis: ((x - mean) / scale) * W.
DataMatrix pca_transform(const PcaModel& model, const DataMatrix& X);

/// Maps scores back through the basis and de-standardizes.
DataMatrix pca_inverse_transform(const PcaModel& model, const DataMatrix& scores);

}  // namespace stats
}  // namespace bodyshape
