#pragma once

#include <cstdint>
#include <vector>

#include "bodyshape/linalg.hpp"

namespace bodyshape {
namespace stats {

struct KMeansModel {
  std::size_t k = 0;
  std::size_t d = 0;
  std::vector<double> centroids;  // k x d, row-major
  double inertia = 0;             // sum of squared distances to assigned centroids
  std::size_t iterations = 0;     // Lloyd iterations of the winning restart
  std::uint64_t seed = 0;
  std::vector<double> inertia_history;  // after each Lloyd iteration of the winning restart

  const double* centroid(std::size_t j) const { return centroids.data() + j * d; }
};

/// k-means++ seeding: the first centroid is uniform over rows, each next
/// one is drawn with probability proportional to its squared distance to
/// the nearest centroid chosen so far. Deterministic per seed.
std::vector<double> kmeans_pp_init(const DataMatrix& X, std::size_t k, std::uint64_t seed);

/// Lloyd's algorithm with k-means++ restarts. Assignment ties go to the
/// lowest centroid index; an emptied cluster is reseeded with the point
/// farthest from its assigned centroid. The best of `restarts` runs by
/// inertia wins. Converged when the largest centroid shift is below tol.
KMeansModel kmeans_fit(const DataMatrix& X, std::size_t k, std::uint64_t seed,
                       double tol = 1e-6, std::size_t max_iter = 300, std::size_t restarts = 8);

/// Index of the nearest centroid (squared Euclidean, ties to lowest).
std::size_t kmeans_assign(const KMeansModel& model, const double* point);
std::vector<std::size_t> kmeans_assign_all(const KMeansModel& model, const DataMatrix& X);

enum class KSelectionCriterion { Bic, Silhouette };

struct KSelection {
  std::size_t k = 0;
  std::vector<std::pair<std::size_t, double>> scores;  // (k, criterion score)
  bool degenerate = false;  // all rows identical; k_min returned
};

/// Sweeps k in [k_min, k_max], scoring each kmeans fit with either a
/// spherical-Gaussian identical-variance BIC or the mean sample
/// silhouette, and returns the argmax (ties to the smaller k).
KSelection select_k(const DataMatrix& X, std::size_t k_min, std::size_t k_max,
                    KSelectionCriterion criterion, std::uint64_t seed,
                    std::size_t restarts = 8);

}  // namespace stats
}  // namespace bodyshape
