#include "bodyshape/pca.hpp"

#include <cmath>
#include <stdexcept>

namespace bodyshape {
namespace stats {

double PcaModel::explained_fraction() const {
  if (total_variance <= 0.0) return 1.0;
  double kept = 0.0;
  for (double v : eigenvalues) kept += v;
  return kept / total_variance;
}

PcaModel pca_fit(const DataMatrix& X, const PcaSelector& selector) {
  if (X.n < 2) throw std::invalid_argument("pca_fit needs at least 2 rows");
  const std::size_t n = X.n;
  const std::size_t d = X.d;

  PcaModel model;
  model.d = d;
  model.means.assign(d, 0.0);
  model.scales.assign(d, 0.0);

  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) model.means[c] += X.at(r, c);
  }
  for (double& v : model.means) v /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dv = X.at(r, c) - model.means[c];
      model.scales[c] += dv * dv;
    }
  }
  for (double& v : model.scales) {
    v = std::sqrt(v / static_cast<double>(n));
    if (v == 0.0) v = 1.0;
  }

  // Standardized covariance, population convention.
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      const double zi = (X.at(r, i) - model.means[i]) / model.scales[i];
      for (std::size_t j = i; j < d; ++j) {
        const double zj = (X.at(r, j) - model.means[j]) / model.scales[j];
        cov[i * d + j] += zi * zj;
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      cov[i * d + j] /= static_cast<double>(n);
      cov[j * d + i] = cov[i * d + j];
    }
  }

  const EigenDecomposition eig = jacobi_eigen_symmetric(cov, d);

  model.total_variance = 0.0;
  for (double v : eig.eigenvalues) model.total_variance += std::max(0.0, v);

  std::size_t k = 0;
  if (selector.kind == PcaSelector::Kind::FixedK) {
    if (selector.k < 1 || selector.k > d) throw std::invalid_argument("pca_fit: bad fixed k");
    k = selector.k;
  } else {
    if (!(selector.theta > 0.0 && selector.theta <= 1.0)) {
      throw std::invalid_argument("pca_fit: variance fraction must be in (0, 1]");
    }
    if (model.total_variance <= 0.0) {
      k = 1;  // degenerate data: identical rows
    } else {
      double cum = 0.0;
      for (k = 0; k < d; ++k) {
        cum += std::max(0.0, eig.eigenvalues[k]);
        if (cum / model.total_variance >= selector.theta) {
          ++k;
          break;
        }
      }
      if (k == 0 || k > d) k = d;
    }
  }

  model.k = k;
  model.eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + static_cast<long>(k));
  for (double& v : model.eigenvalues) v = std::max(0.0, v);
  model.components.assign(d * k, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      model.components[i * k + j] = eig.eigenvectors[i * d + j];
    }
  }
  return model;
}

DataMatrix pca_transform(const PcaModel& model, const DataMatrix& X) {
  if (X.d != model.d) throw std::invalid_argument("pca_transform: column count mismatch");
  DataMatrix out(X.n, model.k);
  for (std::size_t r = 0; r < X.n; ++r) {
    for (std::size_t j = 0; j < model.k; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < model.d; ++i) {
        const double z = (X.at(r, i) - model.means[i]) / model.scales[i];
        acc += z * model.components[i * model.k + j];
      }
      out.at(r, j) = acc;
    }
  }
  return out;
}

DataMatrix pca_inverse_transform(const PcaModel& model, const DataMatrix& scores) {
  if (scores.d != model.k) throw std::invalid_argument("pca_inverse_transform: score width mismatch");
  DataMatrix out(scores.n, model.d);
  for (std::size_t r = 0; r < scores.n; ++r) {
    for (std::size_t i = 0; i < model.d; ++i) {
      double z = 0.0;
      for (std::size_t j = 0; j < model.k; ++j) {
        z += scores.at(r, j) * model.components[i * model.k + j];
      }
      out.at(r, i) = z * model.scales[i] + model.means[i];
    }
  }
  return out;
}

}  // namespace stats
}  // namespace bodyshape
