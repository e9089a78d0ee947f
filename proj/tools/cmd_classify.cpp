#include <iostream>

#include "bodyshape/anthro.hpp"
#include "bodyshape/archs.hpp"
#include "bodyshape/checkpoint.hpp"
#include "bodyshape/dataset.hpp"
#include "bodyshape/fcm.hpp"
#include "bodyshape/kmeans.hpp"
#include "bodyshape/lda.hpp"
#include "bodyshape/measure.hpp"
#include "bodyshape/model_io.hpp"
#include "common.hpp"

namespace bodyshape::cli {

namespace {

struct ClassifyOptions {
  std::string input;
  std::string method = "drop";
  std::string model_path;
  std::string fit_from;
  std::string features = "ratio";  // for kmeans / fcm / lda-nm
  std::string prefix;
};

// Measurement table of the input, extracting from masks when the input
// is a manifest. Row ids are manifest paths or row indices.
std::pair<DatasetTable, std::vector<std::string>> load_as_measurements(
    const std::filesystem::path& input) {
  std::vector<std::string> ids;
  if (is_manifest(input)) {
    DatasetTable table = make_measurement_table();
    for (const auto& entry : load_manifest(input)) {
      append_measurements(table, extract_measurements(load_mask(entry.path)), entry.label);
      ids.push_back(entry.path.generic_string());
    }
    return {table, ids};
  }
  DatasetTable table = load_measurement_csv(input);
  for (std::size_t r = 0; r < table.rows(); ++r) ids.push_back(std::to_string(r));
  return {table, ids};
}

DatasetTable feature_table(const DatasetTable& measurements, const std::string& features) {
  if (features == "raw") return measurements;
  if (features == "ratio") return anthro::ratio_feature_table(measurements);
  throw std::runtime_error("unknown feature kind: " + features);
}

std::vector<double> apply_cluster_preprocess(const ClusterModel& model,
                                             const std::vector<double>& row) {
  std::vector<double> z(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    z[c] = model.moments.sd[c] == 0.0 ? 0.0 : (row[c] - model.moments.mean[c]) / model.moments.sd[c];
  }
  if (!model.pca.has_value()) return z;

  stats::DataMatrix one(1, z.size());
  one.values = z;
  // The PCA model was fit on already-normalized columns.
  stats::DataMatrix projected = stats::pca_transform(*model.pca, one);
  return projected.values;
}

std::vector<int> majority_labels(const std::vector<std::size_t>& assignments,
                                 const DatasetTable& table, std::size_t k) {
  std::vector<std::vector<std::size_t>> votes(k, std::vector<std::size_t>(kShapeLabelCount, 0));
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    votes[assignments[i]][static_cast<std::size_t>(ordinal(*table.labels[i]))]++;
  }
  std::vector<int> labels(k, -1);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kShapeLabelCount; ++c) {
      if (votes[j][c] > votes[j][best]) best = c;
    }
    labels[j] = static_cast<int>(best);
  }
  return labels;
}

ClusterModel fit_cluster_classifier(const std::string& method, const std::string& features,
                                    const std::filesystem::path& fit_from,
                                    const GlobalOptions& opts) {
  const DatasetTable measurements = load_measurement_csv(fit_from);
  if (!measurements.has_labels()) {
    throw std::runtime_error("--fit-from data must be labeled for method " + method);
  }
  const DatasetTable feats = feature_table(measurements, features);
  const auto [normed, moments] = anthro::normalize(feats);

  stats::DataMatrix X(normed.rows(), normed.cols());
  X.values = normed.values;

  ClusterModel model;
  model.method = method;
  model.features = features;
  model.moments = moments;
  model.d = X.d;
  model.k = kShapeLabelCount;

  std::vector<std::size_t> assignments;
  if (method == "kmeans") {
    const stats::KMeansModel km = stats::kmeans_fit(X, kShapeLabelCount, opts.seed);
    model.centroids = km.centroids;
    assignments = stats::kmeans_assign_all(km, X);
  } else {
    const stats::FuzzyModel fm =
        stats::fcm_fit(X, kShapeLabelCount, 2.0, 1e-6, 300, opts.seed);
    model.centroids = fm.centroids;
    model.fuzzifier = fm.fuzzifier;
    assignments.resize(X.n);
    for (std::size_t i = 0; i < X.n; ++i) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < fm.c; ++j) {
        if (fm.membership(i, j) > fm.membership(i, best)) best = j;
      }
      assignments[i] = best;
    }
  }
  model.cluster_labels = majority_labels(assignments, measurements, model.k);
  return model;
}

LdaClassifierModel fit_lda_classifier(const std::string& features,
                                      const std::filesystem::path& fit_from) {
  const DatasetTable measurements = load_measurement_csv(fit_from);
  if (!measurements.has_labels()) {
    throw std::runtime_error("--fit-from data must be labeled for method lda-nm");
  }
  const DatasetTable feats = feature_table(measurements, features);
  stats::DataMatrix X(feats.rows(), feats.cols());
  X.values = feats.values;
  std::vector<int> labels;
  for (std::size_t r = 0; r < feats.rows(); ++r) labels.push_back(ordinal(*feats.labels[r]));

  LdaClassifierModel model;
  model.features = features;
  model.lda = stats::lda_fit(X, labels, kShapeLabelCount - 1);
  return model;
}

void run(const ClassifyOptions& cls, const GlobalOptions& opts) {
  std::filesystem::create_directories(opts.out);
  const auto [measurements, ids] = load_as_measurements(cls.input);
  if (measurements.rows() == 0) throw std::runtime_error("no input rows to classify");

  std::vector<int> predicted(measurements.rows(), 0);

  if (cls.method == "drop") {
    DropModel model;
    if (!cls.fit_from.empty()) {
      const DatasetTable fit_table = load_measurement_csv(cls.fit_from);
      model.stats = anthro::fit_population_stats(fit_table);
      if (!cls.model_path.empty()) save_drop_model(model, cls.model_path);
    } else if (!cls.model_path.empty()) {
      model = load_drop_model(cls.model_path);
    } else {
      throw std::runtime_error("drop method needs --model or --fit-from (fitted stats)");
    }
    for (std::size_t r = 0; r < measurements.rows(); ++r) {
      predicted[r] =
          ordinal(anthro::classify_drop(measurements_from_row(measurements, r), model.stats));
    }
  } else if (cls.method == "kmeans" || cls.method == "fcm") {
    ClusterModel model;
    if (!cls.fit_from.empty()) {
      model = fit_cluster_classifier(cls.method, cls.features, cls.fit_from, opts);
      if (!cls.model_path.empty()) save_cluster_model(model, cls.model_path);
    } else if (!cls.model_path.empty()) {
      model = load_cluster_model(cls.model_path);
    } else {
      throw std::runtime_error(cls.method + " method needs --model or --fit-from");
    }
    const DatasetTable feats = feature_table(measurements, model.features);
    for (std::size_t r = 0; r < feats.rows(); ++r) {
      std::vector<double> row(feats.cols());
      for (std::size_t c = 0; c < feats.cols(); ++c) row[c] = feats.at(r, c);
      const std::vector<double> z = apply_cluster_preprocess(model, row);

      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < model.k; ++j) {
        const double d2 = stats::squared_distance(z.data(), model.centroids.data() + j * model.d,
                                                  model.d);
        if (d2 < best_d) {
          best_d = d2;
          best = j;
        }
      }
      const int label = model.cluster_labels.empty() ? -1 : model.cluster_labels[best];
      if (label < 0) throw std::runtime_error("cluster model carries no label mapping");
      predicted[r] = label;
    }
  } else if (cls.method == "lda-nm") {
    LdaClassifierModel model;
    if (!cls.fit_from.empty()) {
      model = fit_lda_classifier(cls.features, cls.fit_from);
      if (!cls.model_path.empty()) save_lda_model(model, cls.model_path);
    } else if (!cls.model_path.empty()) {
      model = load_lda_model(cls.model_path);
    } else {
      throw std::runtime_error("lda-nm method needs --model or --fit-from");
    }
    const DatasetTable feats = feature_table(measurements, model.features);
    stats::DataMatrix X(feats.rows(), feats.cols());
    X.values = feats.values;
    const auto pred = stats::lda_predict(model.lda, X);
    for (std::size_t r = 0; r < pred.size(); ++r) predicted[r] = pred[r];
  } else {
    // mlp13 / rescnn / incnn load a checkpoint.
    if (cls.model_path.empty()) {
      throw std::runtime_error(cls.method + " needs --model <checkpoint.json>");
    }
    const neural::Network net = neural::load_checkpoint(cls.model_path);
    if (net.arch() != cls.method) {
      throw std::runtime_error("checkpoint arch '" + net.arch() + "' does not match method '" +
                               cls.method + "'");
    }
    if (cls.method == "mlp13") {
      for (std::size_t r = 0; r < measurements.rows(); ++r) {
        const auto feats = anthro::ratio_features(measurements_from_row(measurements, r));
        neural::Tensor x({feats.size()});
        x.data = feats;
        predicted[r] = ordinal(neural::predict(net, x).first);
      }
    } else {
      if (!is_manifest(cls.input)) {
        throw std::runtime_error(cls.method + " classifies masks; pass a manifest as input");
      }
      const auto entries = load_manifest(cls.input);
      for (std::size_t r = 0; r < entries.size(); ++r) {
        const neural::Tensor x =
            mask_to_tensor(load_mask(entries[r].path), neural::kMaskInputSize);
        predicted[r] = ordinal(neural::predict(net, x).first);
      }
    }
  }

  std::vector<PredictionRow> rows;
  std::vector<int> y_true;
  for (std::size_t r = 0; r < measurements.rows(); ++r) {
    PredictionRow row;
    row.id = ids[r];
    row.predicted = shape_label_from_ordinal(predicted[r]);
    if (measurements.has_labels() && measurements.labels[r].has_value()) {
      row.actual = measurements.labels[r];
      y_true.push_back(ordinal(*measurements.labels[r]));
    }
    rows.push_back(row);
  }
  write_predictions(rows, opts.out / (cls.prefix + "predictions.csv"));

  if (y_true.size() == measurements.rows()) {
    emit_report(y_true, predicted, opts, cls.prefix);
  } else if (!opts.quiet) {
    std::cout << "wrote predictions for " << rows.size() << " unlabeled rows\n";
  }
}

}  // namespace

void register_cmd_classify(CLI::App& app, const GlobalOptions& opts) {
  auto cls = std::make_shared<ClassifyOptions>();
  CLI::App* cmd = app.add_subcommand(
      "classify", "Classify measurements or masks with a fitted or loaded model");
  cmd->add_option("input", cls->input, "Measurement CSV or mask manifest")->required();
  cmd->add_option("--method", cls->method, "Classifier family")
      ->check(CLI::IsMember({"drop", "kmeans", "fcm", "lda-nm", "mlp13", "rescnn", "incnn"}))
      ->required();
  cmd->add_option("--model", cls->model_path,
                  "Model file (read, or written when --fit-from is given)");
  cmd->add_option("--fit-from", cls->fit_from, "Labeled measurement CSV to fit the model on");
  cmd->add_option("--features", cls->features, "Feature kind for kmeans/fcm/lda-nm")
      ->check(CLI::IsMember({"raw", "ratio"}));
  cmd->add_option("--prefix", cls->prefix, "Filename prefix for outputs");
  cmd->callback([cls, &opts]() { run(*cls, opts); });
}

}  // namespace bodyshape::cli
