#pragma once

#include <cstdint>
#include <vector>

#include "bodyshape/linalg.hpp"

namespace bodyshape {
namespace stats {

struct FuzzyModel {
  std::size_t c = 0;
  std::size_t d = 0;
  std::vector<double> centroids;   // c x d, row-major
  std::vector<double> memberships; // n x c, rows sum to 1
  double fuzzifier = 2.0;
  double objective = 0.0;                 // final J
  std::vector<double> objective_history;  // J after every update cycle
  std::size_t iterations = 0;

  std::size_t n() const { return c == 0 ? 0 : memberships.size() / c; }
  double membership(std::size_t i, std::size_t j) const { return memberships[i * c + j]; }
};

/// Membership row of one point against fixed centroids:
/// u_j = 1 / sum_l (d_j / d_l)^(2/(m-1)). A point coinciding with one or
/// more centroids splits full membership among the coincident ones.
std::vector<double> fcm_memberships(const double* point, std::size_t d,
                                    const std::vector<double>& centroids, std::size_t c,
                                    double fuzzifier);

/// Standard fuzzy c-means: alternating centroid and membership updates
/// from a seeded random membership init until max |dU| < tol. The
/// objective J = sum u^m d^2 is recorded after every cycle and is
/// non-increasing.
FuzzyModel fcm_fit(const DataMatrix& X, std::size_t c, double fuzzifier = 2.0,
                   double tol = 1e-6, std::size_t max_iter = 300, std::uint64_t seed = 0);

}  // namespace stats
}  // namespace bodyshape
