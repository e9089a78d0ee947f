#pragma once

#include <vector>

#include "bodyshape/linalg.hpp"

namespace bodyshape {
namespace stats {

struct LdaModel {
  std::size_t d = 0;
  std::size_t k = 0;                 // k <= classes - 1
  std::vector<double> basis;         // d x k, row-major projection basis
  std::vector<int> class_ids;        // distinct labels in ascending order
  std::vector<double> class_means;   // classes x k, projected class means
};

/// Fisher discriminant analysis: maximizes between-class over
/// within-class scatter. The within-scatter is regularized by
/// +1e-6 * trace/d on the diagonal and the generalized eigenproblem is
/// solved as Sw^(-1/2) Sb Sw^(-1/2) via two symmetric eigendecompositions.
/// Needs >= 2 classes with >= 2 samples each and k <= classes - 1.
LdaModel lda_fit(const DataMatrix& X, const std::vector<int>& labels, std::size_t k);

/// Projects rows onto the discriminant basis.
DataMatrix lda_transform(const LdaModel& model, const DataMatrix& X);

/// Nearest projected class mean.
std::vector<int> lda_predict(const LdaModel& model, const DataMatrix& X);

}  // namespace stats
}  // namespace bodyshape
