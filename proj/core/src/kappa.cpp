#include "bodyshape/kappa.hpp"

#include <map>
#include <stdexcept>

namespace bodyshape {
namespace stats {

double cohen_kappa(const std::vector<int>& labels_a, const std::vector<int>& labels_b) {
  if (labels_a.size() != labels_b.size()) {
    throw std::invalid_argument("cohen_kappa: labelings differ in length");
  }
  if (labels_a.empty()) throw std::invalid_argument("cohen_kappa: empty labelings");

  const double n = static_cast<double>(labels_a.size());
  std::map<int, double> count_a, count_b;
  double agree = 0.0;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    count_a[labels_a[i]] += 1.0;
    count_b[labels_b[i]] += 1.0;
    if (labels_a[i] == labels_b[i]) agree += 1.0;
  }

  const double po = agree / n;
  double pe = 0.0;
  for (const auto& [label, ca] : count_a) {
    const auto it = count_b.find(label);
    if (it != count_b.end()) pe += (ca / n) * (it->second / n);
  }

  if (pe >= 1.0) return po == 1.0 ? 1.0 : 0.0;
  return (po - pe) / (1.0 - pe);
}

}  // namespace stats
}  // namespace bodyshape
