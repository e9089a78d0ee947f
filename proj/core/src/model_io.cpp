#include "bodyshape/model_io.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bodyshape/fsio.hpp"

namespace bodyshape {

namespace {

using nlohmann::json;

json label_order() {
  json arr = json::array();
  for (ShapeLabel l : all_shape_labels()) arr.push_back(std::string(to_string(l)));
  return arr;
}

json header(const char* kind) {
  json doc;
  doc["format_version"] = 1;
  doc["kind"] = kind;
  doc["shape_labels"] = label_order();
  return doc;
}

json parse_checked(const std::filesystem::path& path, const char* kind) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("model file is not valid JSON: " + path.string());
  }
  if (doc.value("format_version", 0) != 1) {
    throw std::runtime_error("model format version mismatch: " + path.string());
  }
  if (doc.value("kind", "") != kind) {
    throw std::runtime_error("model kind mismatch (expected " + std::string(kind) +
                             "): " + path.string());
  }
  return doc;
}

json dimension_json(const anthro::DimensionStats& d) {
  return {{"mean", d.mean}, {"sd", d.sd}, {"min", d.min}, {"max", d.max}};
}

anthro::DimensionStats dimension_from(const json& doc) {
  anthro::DimensionStats d;
  d.mean = doc.at("mean").get<double>();
  d.sd = doc.at("sd").get<double>();
  d.min = doc.at("min").get<double>();
  d.max = doc.at("max").get<double>();
  return d;
}

json pca_json(const stats::PcaModel& m) {
  return {{"d", m.d},
          {"k", m.k},
          {"means", m.means},
          {"scales", m.scales},
          {"components", m.components},
          {"eigenvalues", m.eigenvalues},
          {"total_variance", m.total_variance}};
}

stats::PcaModel pca_from(const json& doc) {
  stats::PcaModel m;
  m.d = doc.at("d").get<std::size_t>();
  m.k = doc.at("k").get<std::size_t>();
  m.means = doc.at("means").get<std::vector<double>>();
  m.scales = doc.at("scales").get<std::vector<double>>();
  m.components = doc.at("components").get<std::vector<double>>();
  m.eigenvalues = doc.at("eigenvalues").get<std::vector<double>>();
  m.total_variance = doc.at("total_variance").get<double>();
  if (m.means.size() != m.d || m.scales.size() != m.d || m.components.size() != m.d * m.k ||
      m.eigenvalues.size() != m.k) {
    throw std::runtime_error("pca model arrays do not match advertised shape");
  }
  return m;
}

}  // namespace

void save_drop_model(const DropModel& model, const std::filesystem::path& path) {
  json doc = header("drop_stats");
  doc["n"] = model.stats.n;
  doc["hip_minus_bust"] = dimension_json(model.stats.hip_minus_bust);
  doc["bust_minus_waist"] = dimension_json(model.stats.bust_minus_waist);
  atomic_write_file(path, doc.dump(2) + "\n");
}

DropModel load_drop_model(const std::filesystem::path& path) {
  const json doc = parse_checked(path, "drop_stats");
  DropModel model;
  model.stats.n = doc.at("n").get<std::size_t>();
  model.stats.hip_minus_bust = dimension_from(doc.at("hip_minus_bust"));
  model.stats.bust_minus_waist = dimension_from(doc.at("bust_minus_waist"));
  if (!model.stats.fitted()) throw std::runtime_error("drop model is not fitted (n < 2)");
  return model;
}

void save_cluster_model(const ClusterModel& model, const std::filesystem::path& path) {
  json doc = header("cluster");
  doc["method"] = model.method;
  doc["features"] = model.features;
  doc["k"] = model.k;
  doc["d"] = model.d;
  doc["centroids"] = model.centroids;
  doc["fuzzifier"] = model.fuzzifier;
  doc["column_means"] = model.moments.mean;
  doc["column_sds"] = model.moments.sd;
  doc["cluster_labels"] = model.cluster_labels;
  if (model.pca.has_value()) doc["pca"] = pca_json(*model.pca);
  atomic_write_file(path, doc.dump(2) + "\n");
}

ClusterModel load_cluster_model(const std::filesystem::path& path) {
  const json doc = parse_checked(path, "cluster");
  ClusterModel model;
  model.method = doc.at("method").get<std::string>();
  model.features = doc.at("features").get<std::string>();
  model.k = doc.at("k").get<std::size_t>();
  model.d = doc.at("d").get<std::size_t>();
  model.centroids = doc.at("centroids").get<std::vector<double>>();
  model.fuzzifier = doc.value("fuzzifier", 2.0);
  model.moments.mean = doc.at("column_means").get<std::vector<double>>();
  model.moments.sd = doc.at("column_sds").get<std::vector<double>>();
  model.cluster_labels = doc.value("cluster_labels", std::vector<int>{});
  if (doc.contains("pca")) model.pca = pca_from(doc.at("pca"));
  if (model.centroids.size() != model.k * model.d) {
    throw std::runtime_error("cluster model centroid array does not match k x d");
  }
  return model;
}

void save_lda_model(const LdaClassifierModel& model, const std::filesystem::path& path) {
  json doc = header("lda_nm");
  doc["features"] = model.features;
  doc["d"] = model.lda.d;
  doc["k"] = model.lda.k;
  doc["basis"] = model.lda.basis;
  doc["class_ids"] = model.lda.class_ids;
  doc["class_means"] = model.lda.class_means;
  atomic_write_file(path, doc.dump(2) + "\n");
}

LdaClassifierModel load_lda_model(const std::filesystem::path& path) {
  const json doc = parse_checked(path, "lda_nm");
  LdaClassifierModel model;
  model.features = doc.at("features").get<std::string>();
  model.lda.d = doc.at("d").get<std::size_t>();
  model.lda.k = doc.at("k").get<std::size_t>();
  model.lda.basis = doc.at("basis").get<std::vector<double>>();
  model.lda.class_ids = doc.at("class_ids").get<std::vector<int>>();
  model.lda.class_means = doc.at("class_means").get<std::vector<double>>();
  if (model.lda.basis.size() != model.lda.d * model.lda.k ||
      model.lda.class_means.size() != model.lda.class_ids.size() * model.lda.k) {
    throw std::runtime_error("lda model arrays do not match advertised shape");
  }
  return model;
}

}  // namespace bodyshape
