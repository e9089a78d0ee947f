#include "bodyshape/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bodyshape/rng.hpp"

namespace bodyshape {
namespace stats {

std::vector<double> fcm_memberships(const double* point, std::size_t d,
                                    const std::vector<double>& centroids, std::size_t c,
                                    double fuzzifier) {
  std::vector<double> u(c, 0.0);
  std::vector<double> d2(c, 0.0);
  std::size_t coincident = 0;
  for (std::size_t j = 0; j < c; ++j) {
    d2[j] = squared_distance(point, centroids.data() + j * d, d);
    if (d2[j] == 0.0) ++coincident;
  }
  if (coincident > 0) {
    for (std::size_t j = 0; j < c; ++j) {
      u[j] = d2[j] == 0.0 ? 1.0 / static_cast<double>(coincident) : 0.0;
    }
    return u;
  }

  const double power = 1.0 / (fuzzifier - 1.0);  // squared distances, so 2/(m-1) halves
  for (std::size_t j = 0; j < c; ++j) {
    double denom = 0.0;
    for (std::size_t l = 0; l < c; ++l) denom += std::pow(d2[j] / d2[l], power);
    u[j] = 1.0 / denom;
  }
  return u;
}

FuzzyModel fcm_fit(const DataMatrix& X, std::size_t c, double fuzzifier, double tol,
                   std::size_t max_iter, std::uint64_t seed) {
  if (c < 2 || c > X.n) throw std::invalid_argument("fcm_fit: need 2 <= c <= n");
  if (!(fuzzifier > 1.0)) throw std::invalid_argument("fcm_fit: fuzzifier must be > 1");

  const std::size_t n = X.n;
  const std::size_t d = X.d;

  FuzzyModel model;
  model.c = c;
  model.d = d;
  model.fuzzifier = fuzzifier;
  model.centroids.assign(c * d, 0.0);
  model.memberships.assign(n * c, 0.0);

  // Random membership init, rows normalized to sum 1.
  SplitMix64 rng(derive_seed(seed, 0xfc3aULL));
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      const double v = rng.next_double() + 1e-9;
      model.memberships[i * c + j] = v;
      sum += v;
    }
    for (std::size_t j = 0; j < c; ++j) model.memberships[i * c + j] /= sum;
  }

  std::vector<double> weights(c, 0.0);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // Centroids from current memberships.
    std::fill(model.centroids.begin(), model.centroids.end(), 0.0);
    std::fill(weights.begin(), weights.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        const double um = std::pow(model.memberships[i * c + j], fuzzifier);
        weights[j] += um;
        for (std::size_t f = 0; f < d; ++f) model.centroids[j * d + f] += um * X.at(i, f);
      }
    }
    for (std::size_t j = 0; j < c; ++j) {
      if (weights[j] > 0.0) {
        for (std::size_t f = 0; f < d; ++f) model.centroids[j * d + f] /= weights[j];
      }
    }

    // Memberships from new centroids.
    double max_delta = 0.0;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto u = fcm_memberships(X.values.data() + i * d, d, model.centroids, c, fuzzifier);
      for (std::size_t j = 0; j < c; ++j) {
        max_delta = std::max(max_delta, std::abs(u[j] - model.memberships[i * c + j]));
        model.memberships[i * c + j] = u[j];
        objective += std::pow(u[j], fuzzifier) *
                     squared_distance(X.values.data() + i * d, model.centroids.data() + j * d, d);
      }
    }
    model.objective = objective;
    model.objective_history.push_back(objective);
    model.iterations = iter + 1;
    if (max_delta < tol) break;
  }
  return model;
}

}  // namespace stats
}  // namespace bodyshape
