#pragma once

#include <vector>

namespace bodyshape {

/// Per-epoch training record.
struct LossCurve {
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  std::vector<double> val_accuracy;

  std::size_t epochs() const { return train_loss.size(); }
};

}  // namespace bodyshape
