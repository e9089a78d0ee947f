#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bodyshape/anthro.hpp"
#include "bodyshape/lda.hpp"
#include "bodyshape/pca.hpp"

namespace bodyshape {

/// A fitted clustering pipeline: feature choice, column standardization,
/// optional PCA projection, centroids, and an optional cluster-to-label
/// mapping (majority vote on labeled fitting data).
struct ClusterModel {
  std::string method;   // "kmeans" or "fcm"
  std::string features; // "raw" or "ratio"
  std::size_t k = 0;
  std::size_t d = 0;              // feature dimension entering the centroids
  std::vector<double> centroids;  // k x d
  double fuzzifier = 2.0;         // fcm only
  anthro::ColumnMoments moments;  // standardization of the feature columns
  std::optional<stats::PcaModel> pca;
  std::vector<int> cluster_labels;  // ShapeLabel ordinal per cluster, -1 when unknown
};

/// Drop-rule classifier state.
struct DropModel {
  anthro::PopulationStats stats;
};

/// Discriminant-projection nearest-class-mean classifier.
struct LdaClassifierModel {
  std::string features = "ratio";
  stats::LdaModel lda;
};

// All model documents are JSON with format_version 1, explicit numeric
// arrays, and the canonical ShapeLabel name order. Writes are atomic;
// loads validate the version and the advertised shapes.

void save_drop_model(const DropModel& model, const std::filesystem::path& path);
DropModel load_drop_model(const std::filesystem::path& path);

void save_cluster_model(const ClusterModel& model, const std::filesystem::path& path);
ClusterModel load_cluster_model(const std::filesystem::path& path);

void save_lda_model(const LdaClassifierModel& model, const std::filesystem::path& path);
LdaClassifierModel load_lda_model(const std::filesystem::path& path);

}  // namespace bodyshape
