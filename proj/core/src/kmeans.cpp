#include "bodyshape/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bodyshape/rng.hpp"

namespace bodyshape {
namespace stats {

namespace {

std::size_t sample_weighted(const std::vector<double>& weights, double total, SplitMix64& rng) {
  const double u = rng.next_double() * total;
  double cum = 0.0;
  std::size_t pick = weights.size() - 1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (u < cum) {
      pick = i;
      break;
    }
  }
  // Guard against landing on a zero-weight point at a cumsum boundary.
  if (weights[pick] == 0.0) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) return i;
    }
  }
  return pick;
}

}  // namespace

namespace {

// Shared k-means++ seeding. greedy_trials == 1 gives the textbook D^2
// sampling; larger values draw several candidates per step and keep the
// one with the lowest resulting potential.
std::vector<double> pp_init_impl(const DataMatrix& X, std::size_t k, std::uint64_t seed,
                                 std::size_t greedy_trials) {
  if (k < 1 || k > X.n) throw std::invalid_argument("kmeans_pp_init: need 1 <= k <= n");
  SplitMix64 rng(derive_seed(seed, 0x4b70ULL));

  std::vector<double> centroids;
  centroids.reserve(k * X.d);

  const std::size_t first = rng.next_below(X.n);
  centroids.insert(centroids.end(), X.values.begin() + static_cast<long>(first * X.d),
                   X.values.begin() + static_cast<long>((first + 1) * X.d));

  std::vector<double> min_d2(X.n, 0.0);
  for (std::size_t i = 0; i < X.n; ++i) {
    min_d2[i] = squared_distance(X.values.data() + i * X.d, centroids.data(), X.d);
  }

  for (std::size_t chosen = 1; chosen < k; ++chosen) {
    double total = 0.0;
    for (double w : min_d2) total += w;

    std::size_t pick;
    if (total > 0.0) {
      pick = sample_weighted(min_d2, total, rng);
      if (greedy_trials > 1) {
        double best_potential = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < greedy_trials; ++t) {
          const std::size_t cand = t == 0 ? pick : sample_weighted(min_d2, total, rng);
          const double* c = X.values.data() + cand * X.d;
          double potential = 0.0;
          for (std::size_t i = 0; i < X.n; ++i) {
            potential += std::min(min_d2[i], squared_distance(X.values.data() + i * X.d, c, X.d));
          }
          if (potential < best_potential) {
            best_potential = potential;
            pick = cand;
          }
        }
      }
    } else {
      // All points coincide with existing centroids; pick uniformly.
      pick = rng.next_below(X.n);
    }

    const double* p = X.values.data() + pick * X.d;
    centroids.insert(centroids.end(), p, p + X.d);
    for (std::size_t i = 0; i < X.n; ++i) {
      min_d2[i] = std::min(min_d2[i], squared_distance(X.values.data() + i * X.d, p, X.d));
    }
  }
  return centroids;
}

}  // namespace

std::vector<double> kmeans_pp_init(const DataMatrix& X, std::size_t k, std::uint64_t seed) {
  return pp_init_impl(X, k, seed, 1);
}

namespace {

struct LloydResult {
  std::vector<double> centroids;
  double inertia = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  std::vector<double> history;  // inertia after each assign/update step
};

// Single-point improvement pass (Hartigan-Wong style): move a point to
// another cluster when that strictly lowers total inertia, maintaining
// centroids incrementally. Converges to a state where no single move
// helps, which also implies nearest-centroid consistency.
void hartigan_refine(const DataMatrix& X, std::size_t k, std::vector<double>& centroids,
                     std::vector<std::size_t>& assign) {
  const std::size_t n = X.n;
  const std::size_t d = X.d;
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t a : assign) counts[a]++;

  for (std::size_t pass = 0; pass < 200; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = assign[i];
      if (counts[a] <= 1) continue;
      const double* x = X.values.data() + i * d;
      const double na = static_cast<double>(counts[a]);
      const double cost_out =
          na / (na - 1.0) * squared_distance(x, centroids.data() + a * d, d);

      double best_delta = -1e-12;
      std::size_t best_b = a;
      for (std::size_t b = 0; b < k; ++b) {
        if (b == a) continue;
        const double nb = static_cast<double>(counts[b]);
        const double delta =
            nb / (nb + 1.0) * squared_distance(x, centroids.data() + b * d, d) - cost_out;
        if (delta < best_delta) {
          best_delta = delta;
          best_b = b;
        }
      }
      if (best_b != a) {
        const double nb = static_cast<double>(counts[best_b]);
        for (std::size_t f = 0; f < d; ++f) {
          centroids[a * d + f] = (centroids[a * d + f] * na - x[f]) / (na - 1.0);
          centroids[best_b * d + f] = (centroids[best_b * d + f] * nb + x[f]) / (nb + 1.0);
        }
        counts[a]--;
        counts[best_b]++;
        assign[i] = best_b;
        moved = true;
      }
    }
    if (!moved) break;
  }
}

LloydResult lloyd(const DataMatrix& X, std::size_t k, std::vector<double> centroids,
                  double tol, std::size_t max_iter) {
  const std::size_t n = X.n;
  const std::size_t d = X.d;
  std::vector<std::size_t> assign(n, 0);
  std::vector<double> next(k * d, 0.0);
  std::vector<std::size_t> counts(k, 0);

  LloydResult result;
  std::size_t iter = 0;
  for (; iter < max_iter; ++iter) {
    // Assignment step; ties go to the lowest centroid index.
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const double d2 = squared_distance(X.values.data() + i * d, centroids.data() + j * d, d);
        if (d2 < best) {
          best = d2;
          arg = j;
        }
      }
      assign[i] = arg;
    }

    std::fill(next.begin(), next.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      counts[assign[i]]++;
      for (std::size_t c = 0; c < d; ++c) next[assign[i] * d + c] += X.at(i, c);
    }

    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] == 0) {
        // Reseed an empty cluster with the point farthest from its centroid.
        double far_d2 = -1.0;
        std::size_t far_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d2 = squared_distance(X.values.data() + i * d,
                                             centroids.data() + assign[i] * d, d);
          if (d2 > far_d2) {
            far_d2 = d2;
            far_i = i;
          }
        }
        for (std::size_t c = 0; c < d; ++c) next[j * d + c] = X.at(far_i, c);
        counts[j] = 1;
        assign[far_i] = j;
      } else {
        for (std::size_t c = 0; c < d; ++c) next[j * d + c] /= static_cast<double>(counts[j]);
      }
    }

    double max_shift = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      max_shift = std::max(max_shift,
                           std::sqrt(squared_distance(centroids.data() + j * d,
                                                      next.data() + j * d, d)));
    }
    centroids = next;

    double step_inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      step_inertia += squared_distance(X.values.data() + i * d,
                                       centroids.data() + assign[i] * d, d);
    }
    result.history.push_back(step_inertia);

    if (max_shift < tol) {
      ++iter;
      break;
    }
  }

  hartigan_refine(X, k, centroids, assign);

  double inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      best = std::min(best, squared_distance(X.values.data() + i * d, centroids.data() + j * d, d));
    }
    inertia += best;
  }

  result.centroids = std::move(centroids);
  result.inertia = inertia;
  result.iterations = iter;
  return result;
}

}  // namespace

KMeansModel kmeans_fit(const DataMatrix& X, std::size_t k, std::uint64_t seed, double tol,
                       std::size_t max_iter, std::size_t restarts) {
  if (k < 1 || k > X.n) throw std::invalid_argument("kmeans_fit: need 1 <= k <= n");
  if (restarts < 1) throw std::invalid_argument("kmeans_fit: restarts must be >= 1");

  KMeansModel best;
  best.k = k;
  best.d = X.d;
  best.seed = seed;
  best.inertia = std::numeric_limits<double>::infinity();

  for (std::size_t r = 0; r < restarts; ++r) {
    const std::uint64_t run_seed = derive_seed(seed, 0x4b6dULL, r);
    LloydResult run = lloyd(X, k, pp_init_impl(X, k, run_seed, 4), tol, max_iter);
    if (run.inertia < best.inertia) {
      best.centroids = std::move(run.centroids);
      best.inertia = run.inertia;
      best.iterations = run.iterations;
      best.inertia_history = std::move(run.history);
    }
  }
  return best;
}

std::size_t kmeans_assign(const KMeansModel& model, const double* point) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t j = 0; j < model.k; ++j) {
    const double d2 = squared_distance(point, model.centroid(j), model.d);
    if (d2 < best) {
      best = d2;
      arg = j;
    }
  }
  return arg;
}

std::vector<std::size_t> kmeans_assign_all(const KMeansModel& model, const DataMatrix& X) {
  if (X.d != model.d) throw std::invalid_argument("kmeans_assign_all: dimension mismatch");
  std::vector<std::size_t> out(X.n);
  for (std::size_t i = 0; i < X.n; ++i) out[i] = kmeans_assign(model, X.values.data() + i * X.d);
  return out;
}

namespace {

// Spherical-Gaussian identical-variance BIC (the X-means scoring model).
double bic_score(const DataMatrix& X, const KMeansModel& model,
                 const std::vector<std::size_t>& assign) {
  const double n = static_cast<double>(X.n);
  const double d = static_cast<double>(X.d);
  const double k = static_cast<double>(model.k);

  std::vector<std::size_t> sizes(model.k, 0);
  for (std::size_t a : assign) sizes[a]++;

  const double denom = std::max(1.0, d * (n - k));
  const double sigma2 = std::max(model.inertia / denom, 1e-12);

  double log_l = 0.0;
  for (std::size_t j = 0; j < model.k; ++j) {
    if (sizes[j] == 0) continue;
    const double rj = static_cast<double>(sizes[j]);
    log_l += rj * std::log(rj / n);
  }
  log_l -= 0.5 * n * d * std::log(2.0 * 3.14159265358979323846 * sigma2);
  log_l -= 0.5 * d * (n - k);

  const double params = k * d + (k - 1.0) + 1.0;
  return log_l - 0.5 * params * std::log(n);
}

// Mean sample silhouette with squared Euclidean distances; singleton
// clusters contribute 0.
double silhouette_score(const DataMatrix& X, std::size_t k,
                        const std::vector<std::size_t>& assign) {
  const std::size_t n = X.n;
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t a : assign) sizes[a]++;

  double total = 0.0;
  std::vector<double> mean_d(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(mean_d.begin(), mean_d.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      mean_d[assign[j]] += squared_distance(X.values.data() + i * X.d,
                                            X.values.data() + j * X.d, X.d);
    }
    const std::size_t own = assign[i];
    if (sizes[own] <= 1) continue;  // silhouette 0 for singletons

    const double a = mean_d[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c == own || sizes[c] == 0) continue;
      b = std::min(b, mean_d[c] / static_cast<double>(sizes[c]));
    }
    if (std::isfinite(b)) {
      const double m = std::max(a, b);
      total += m > 0.0 ? (b - a) / m : 0.0;
    }
  }
  return total / static_cast<double>(n);
}

}  // namespace

KSelection select_k(const DataMatrix& X, std::size_t k_min, std::size_t k_max,
                    KSelectionCriterion criterion, std::uint64_t seed, std::size_t restarts) {
  if (k_min < 1 || k_min > k_max) throw std::invalid_argument("select_k: bad k range");
  if (k_max > X.n) throw std::invalid_argument("select_k: k_max must be <= n");

  KSelection sel;

  bool all_identical = true;
  for (std::size_t i = 1; i < X.n && all_identical; ++i) {
    all_identical = squared_distance(X.values.data(), X.values.data() + i * X.d, X.d) == 0.0;
  }
  if (all_identical) {
    sel.k = k_min;
    sel.degenerate = true;
    return sel;
  }

  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const KMeansModel model = kmeans_fit(X, k, derive_seed(seed, 0x5e1eULL, k),
                                         1e-6, 300, restarts);
    const auto assign = kmeans_assign_all(model, X);
    const double score = criterion == KSelectionCriterion::Bic
                             ? bic_score(X, model, assign)
                             : silhouette_score(X, k, assign);
    sel.scores.emplace_back(k, score);
    if (score > best_score) {  // strict: ties keep the smaller k
      best_score = score;
      sel.k = k;
    }
  }
  return sel;
}

}  // namespace stats
}  // namespace bodyshape
