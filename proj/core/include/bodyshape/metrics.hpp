#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "bodyshape/loss_curve.hpp"
#include "bodyshape/shape_label.hpp"

namespace bodyshape {
namespace eval {

/// Square count matrix, rows = actual class, columns = predicted class,
/// in canonical ShapeLabel order when k == 5.
struct ConfusionMatrix {
  std::size_t k = 0;
  std::vector<std::size_t> counts;  // k x k, row-major

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t classes) : k(classes), counts(classes * classes, 0) {}

  std::size_t& at(std::size_t actual, std::size_t predicted) {
    return counts[actual * k + predicted];
  }
  std::size_t at(std::size_t actual, std::size_t predicted) const {
    return counts[actual * k + predicted];
  }

  std::size_t total() const;
  std::size_t row_sum(std::size_t actual) const;
  std::size_t col_sum(std::size_t predicted) const;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                 std::size_t k = kShapeLabelCount);

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;
};

struct AverageMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Per-class precision/recall/F1/support plus accuracy and macro and
/// support-weighted averages. Zero denominators yield 0 metrics.
struct ClassificationReport {
  std::vector<std::string> classes;
  std::vector<ClassMetrics> per_class;
  double accuracy = 0;
  AverageMetrics macro_avg;
  AverageMetrics weighted_avg;
  std::size_t total = 0;
};

/// Builds the report from a confusion matrix. Class names default to the
/// canonical shape names when k == 5 and to ordinals otherwise.
ClassificationReport report(const ConfusionMatrix& cm,
                            const std::vector<std::string>& class_names = {});

/// Two-decimal display rounding, half away from zero.
double round2(double v);

/// Fixed-column text table in the classification-report layout, all
/// metrics rounded to two decimals.
std::string render_report_text(const ClassificationReport& rep);

/// JSON document carrying full-precision metrics plus a "rounded" block
/// with the two-decimal display values.
std::string render_report_json(const ClassificationReport& rep);

/// Writes `epoch,train_loss,val_loss,val_accuracy` rows at full
/// precision (atomic write). The curve must be nonempty.
void export_curves(const LossCurve& curve, const std::filesystem::path& path);

LossCurve load_curves(const std::filesystem::path& path);

}  // namespace eval
}  // namespace bodyshape
