#include "bodyshape/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bodyshape/fsio.hpp"
#include "bodyshape/table.hpp"

namespace bodyshape {
namespace eval {

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (std::size_t v : counts) t += v;
  return t;
}

std::size_t ConfusionMatrix::row_sum(std::size_t actual) const {
  std::size_t t = 0;
  for (std::size_t p = 0; p < k; ++p) t += at(actual, p);
  return t;
}

std::size_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::size_t t = 0;
  for (std::size_t a = 0; a < k; ++a) t += at(a, predicted);
  return t;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                 std::size_t k) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("confusion_matrix: length mismatch");
  }
  ConfusionMatrix cm(k);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int a = y_true[i];
    const int p = y_pred[i];
    if (a < 0 || p < 0 || a >= static_cast<int>(k) || p >= static_cast<int>(k)) {
      throw std::invalid_argument("confusion_matrix: label out of range");
    }
    cm.at(static_cast<std::size_t>(a), static_cast<std::size_t>(p))++;
  }
  return cm;
}

ClassificationReport report(const ConfusionMatrix& cm, const std::vector<std::string>& class_names) {
  const std::size_t total = cm.total();
  if (total == 0) throw std::invalid_argument("report: empty confusion matrix");

  ClassificationReport rep;
  rep.total = total;
  if (!class_names.empty()) {
    if (class_names.size() != cm.k) throw std::invalid_argument("report: class name count");
    rep.classes = class_names;
  } else if (cm.k == kShapeLabelCount) {
    for (ShapeLabel l : all_shape_labels()) rep.classes.emplace_back(to_string(l));
  } else {
    for (std::size_t c = 0; c < cm.k; ++c) rep.classes.push_back(std::to_string(c));
  }

  std::size_t trace = 0;
  for (std::size_t c = 0; c < cm.k; ++c) {
    ClassMetrics m;
    const std::size_t tp = cm.at(c, c);
    const std::size_t col = cm.col_sum(c);
    const std::size_t row = cm.row_sum(c);
    m.support = row;
    m.precision = col == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(col);
    m.recall = row == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(row);
    m.f1 = (m.precision + m.recall) == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    rep.per_class.push_back(m);
    trace += tp;

    rep.macro_avg.precision += m.precision;
    rep.macro_avg.recall += m.recall;
    rep.macro_avg.f1 += m.f1;
    rep.weighted_avg.precision += m.precision * static_cast<double>(m.support);
    rep.weighted_avg.recall += m.recall * static_cast<double>(m.support);
    rep.weighted_avg.f1 += m.f1 * static_cast<double>(m.support);
  }

  const double k = static_cast<double>(cm.k);
  rep.macro_avg.precision /= k;
  rep.macro_avg.recall /= k;
  rep.macro_avg.f1 /= k;
  rep.weighted_avg.precision /= static_cast<double>(total);
  rep.weighted_avg.recall /= static_cast<double>(total);
  rep.weighted_avg.f1 /= static_cast<double>(total);
  rep.accuracy = static_cast<double>(trace) / static_cast<double>(total);
  return rep;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

namespace {

std::string fmt2(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << round2(v);
  return out.str();
}

}  // namespace

std::string render_report_text(const ClassificationReport& rep) {
  std::size_t name_w = 12;  // at least as wide as "weighted avg"
  for (const auto& name : rep.classes) name_w = std::max(name_w, name.size());

  std::ostringstream out;
  out << std::setw(static_cast<int>(name_w)) << "" << std::setw(11) << "precision"
      << std::setw(10) << "recall" << std::setw(10) << "f1-score" << std::setw(10) << "support"
      << "\n\n";
  for (std::size_t c = 0; c < rep.classes.size(); ++c) {
    const auto& m = rep.per_class[c];
    out << std::setw(static_cast<int>(name_w)) << rep.classes[c] << std::setw(11)
        << fmt2(m.precision) << std::setw(10) << fmt2(m.recall) << std::setw(10) << fmt2(m.f1)
        << std::setw(10) << m.support << "\n";
  }
  out << "\n";
  out << std::setw(static_cast<int>(name_w)) << "accuracy" << std::setw(11) << "" << std::setw(10)
      << "" << std::setw(10) << fmt2(rep.accuracy) << std::setw(10) << rep.total << "\n";
  out << std::setw(static_cast<int>(name_w)) << "macro avg" << std::setw(11)
      << fmt2(rep.macro_avg.precision) << std::setw(10) << fmt2(rep.macro_avg.recall)
      << std::setw(10) << fmt2(rep.macro_avg.f1) << std::setw(10) << rep.total << "\n";
  out << std::setw(static_cast<int>(name_w)) << "weighted avg" << std::setw(11)
      << fmt2(rep.weighted_avg.precision) << std::setw(10) << fmt2(rep.weighted_avg.recall)
      << std::setw(10) << fmt2(rep.weighted_avg.f1) << std::setw(10) << rep.total << "\n";
  return out.str();
}

std::string render_report_json(const ClassificationReport& rep) {
  nlohmann::json doc;
  doc["classes"] = rep.classes;
  doc["total"] = rep.total;
  doc["accuracy"] = rep.accuracy;

  auto avg_json = [](const AverageMetrics& a) {
    return nlohmann::json{{"precision", a.precision}, {"recall", a.recall}, {"f1", a.f1}};
  };
  auto avg_rounded = [](const AverageMetrics& a) {
    return nlohmann::json{{"precision", round2(a.precision)},
                          {"recall", round2(a.recall)},
                          {"f1", round2(a.f1)}};
  };

  doc["per_class"] = nlohmann::json::array();
  nlohmann::json rounded_classes = nlohmann::json::array();
  for (const auto& m : rep.per_class) {
    doc["per_class"].push_back({{"precision", m.precision},
                                {"recall", m.recall},
                                {"f1", m.f1},
                                {"support", m.support}});
    rounded_classes.push_back({{"precision", round2(m.precision)},
                               {"recall", round2(m.recall)},
                               {"f1", round2(m.f1)},
                               {"support", m.support}});
  }
  doc["macro_avg"] = avg_json(rep.macro_avg);
  doc["weighted_avg"] = avg_json(rep.weighted_avg);
  doc["rounded"] = {{"accuracy", round2(rep.accuracy)},
                    {"per_class", rounded_classes},
                    {"macro_avg", avg_rounded(rep.macro_avg)},
                    {"weighted_avg", avg_rounded(rep.weighted_avg)}};
  return doc.dump(2) + "\n";
}

void export_curves(const LossCurve& curve, const std::filesystem::path& path) {
  if (curve.epochs() == 0) throw std::invalid_argument("export_curves: empty curve");
  std::ostringstream out;
  out << "epoch,train_loss,val_loss,val_accuracy\n";
  for (std::size_t e = 0; e < curve.epochs(); ++e) {
    out << (e + 1) << ',' << format_double(curve.train_loss[e]) << ','
        << format_double(curve.val_loss[e]) << ',' << format_double(curve.val_accuracy[e])
        << '\n';
  }
  atomic_write_file(path, out.str());
}

LossCurve load_curves(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line).size() != 4) {
    throw std::runtime_error("bad loss curve file: " + path.string());
  }
  LossCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw std::runtime_error("bad loss curve row: " + line);
    curve.train_loss.push_back(std::stod(fields[1]));
    curve.val_loss.push_back(std::stod(fields[2]));
    curve.val_accuracy.push_back(std::stod(fields[3]));
  }
  return curve;
}

}  // namespace eval
}  // namespace bodyshape
