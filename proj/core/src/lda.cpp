#include "bodyshape/lda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace bodyshape {
namespace stats {

LdaModel lda_fit(const DataMatrix& X, const std::vector<int>& labels, std::size_t k) {
  if (labels.size() != X.n) throw std::invalid_argument("lda_fit: label count mismatch");

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < X.n; ++i) by_class[labels[i]].push_back(i);
  const std::size_t classes = by_class.size();
  if (classes < 2) throw std::invalid_argument("lda_fit: need at least 2 classes");
  for (const auto& [id, rows] : by_class) {
    if (rows.size() < 2) throw std::invalid_argument("lda_fit: every class needs >= 2 samples");
  }
  if (k < 1 || k > classes - 1) throw std::invalid_argument("lda_fit: need 1 <= k <= classes-1");

  const std::size_t d = X.d;

  std::vector<double> grand_mean(d, 0.0);
  for (std::size_t i = 0; i < X.n; ++i) {
    for (std::size_t c = 0; c < d; ++c) grand_mean[c] += X.at(i, c);
  }
  for (double& v : grand_mean) v /= static_cast<double>(X.n);

  std::vector<double> sw(d * d, 0.0);
  std::vector<double> sb(d * d, 0.0);
  std::map<int, std::vector<double>> class_mean_raw;

  for (const auto& [id, rows] : by_class) {
    std::vector<double> mean(d, 0.0);
    for (std::size_t i : rows) {
      for (std::size_t c = 0; c < d; ++c) mean[c] += X.at(i, c);
    }
    for (double& v : mean) v /= static_cast<double>(rows.size());

    for (std::size_t i : rows) {
      for (std::size_t a = 0; a < d; ++a) {
        const double da = X.at(i, a) - mean[a];
        for (std::size_t b = 0; b < d; ++b) sw[a * d + b] += da * (X.at(i, b) - mean[b]);
      }
    }
    for (std::size_t a = 0; a < d; ++a) {
      const double da = mean[a] - grand_mean[a];
      for (std::size_t b = 0; b < d; ++b) {
        sb[a * d + b] += static_cast<double>(rows.size()) * da * (mean[b] - grand_mean[b]);
      }
    }
    class_mean_raw[id] = std::move(mean);
  }

  // Regularize the within-class scatter.
  double trace = 0.0;
  for (std::size_t a = 0; a < d; ++a) trace += sw[a * d + a];
  const double ridge = 1e-6 * std::max(trace / static_cast<double>(d), 1e-12);
  for (std::size_t a = 0; a < d; ++a) sw[a * d + a] += ridge;

  // Sw^(-1/2) from the eigendecomposition of Sw.
  const EigenDecomposition sw_eig = jacobi_eigen_symmetric(sw, d);
  for (double ev : sw_eig.eigenvalues) {
    if (!(ev > 0.0)) {
      throw std::runtime_error("lda_fit: within-class scatter singular after regularization");
    }
  }
  std::vector<double> sw_inv_sqrt(d * d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        acc += sw_eig.eigenvectors[a * d + j] * sw_eig.eigenvectors[b * d + j] /
               std::sqrt(sw_eig.eigenvalues[j]);
      }
      sw_inv_sqrt[a * d + b] = acc;
    }
  }

  // M = Sw^(-1/2) Sb Sw^(-1/2), symmetric by construction.
  std::vector<double> tmp(d * d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += sw_inv_sqrt[a * d + j] * sb[j * d + b];
      tmp[a * d + b] = acc;
    }
  }
  std::vector<double> m(d * d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += tmp[a * d + j] * sw_inv_sqrt[j * d + b];
      m[a * d + b] = acc;
    }
  }
  const EigenDecomposition m_eig = jacobi_eigen_symmetric(m, d);

  LdaModel model;
  model.d = d;
  model.k = k;
  model.basis.assign(d * k, 0.0);
  // Basis = Sw^(-1/2) * top-k eigenvectors of M.
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        acc += sw_inv_sqrt[a * d + i] * m_eig.eigenvectors[i * d + j];
      }
      model.basis[a * k + j] = acc;
    }
  }

  for (const auto& [id, mean] : class_mean_raw) {
    model.class_ids.push_back(id);
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < d; ++a) acc += mean[a] * model.basis[a * k + j];
      model.class_means.push_back(acc);
    }
  }
  return model;
}

DataMatrix lda_transform(const LdaModel& model, const DataMatrix& X) {
  if (X.d != model.d) throw std::invalid_argument("lda_transform: dimension mismatch");
  DataMatrix out(X.n, model.k);
  for (std::size_t i = 0; i < X.n; ++i) {
    for (std::size_t j = 0; j < model.k; ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < model.d; ++a) {
        acc += X.at(i, a) * model.basis[a * model.k + j];
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

std::vector<int> lda_predict(const LdaModel& model, const DataMatrix& X) {
  const DataMatrix projected = lda_transform(model, X);
  std::vector<int> out(X.n, 0);
  for (std::size_t i = 0; i < X.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.class_ids.size(); ++c) {
      const double d2 = squared_distance(projected.values.data() + i * model.k,
                                         model.class_means.data() + c * model.k, model.k);
      if (d2 < best) {
        best = d2;
        out[i] = model.class_ids[c];
      }
    }
  }
  return out;
}

}  // namespace stats
}  // namespace bodyshape
