#pragma once

#include <vector>

namespace bodyshape {
namespace stats {

/// Cohen's kappa between two labelings of the same samples:
/// kappa = (po - pe) / (1 - pe) with marginal-product expected agreement.
/// When pe == 1 (both labelings constant on one label) kappa is defined
/// as 1 if po == 1 and 0 otherwise. Throws on length mismatch or empty
/// input.
double cohen_kappa(const std::vector<int>& labels_a, const std::vector<int>& labels_b);

}  // namespace stats
}  // namespace bodyshape
