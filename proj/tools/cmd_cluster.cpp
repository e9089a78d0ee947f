#include <iostream>
#include <sstream>

#include "bodyshape/anthro.hpp"
#include "bodyshape/fcm.hpp"
#include "bodyshape/fsio.hpp"
#include "bodyshape/kappa.hpp"
#include "bodyshape/kmeans.hpp"
#include "bodyshape/model_io.hpp"
#include "bodyshape/pca.hpp"
#include "common.hpp"

namespace bodyshape::cli {

namespace {

struct ClusterOptions {
  std::string input;
  std::string features = "raw";
  double remove_outliers = 0.0;  // 0 disables
  std::string pca;               // "", integer k, or fraction theta
  std::size_t k = 5;
  std::string select_k;  // "a..b"
  bool fuzzy = false;
  std::size_t clusters = 5;
  double fuzzifier = 2.0;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    throw std::runtime_error("--select-k expects a range like 2..5");
  }
  return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
}

void run(const ClusterOptions& copt, const GlobalOptions& opts) {
  std::filesystem::create_directories(opts.out);

  DatasetTable measurements = load_measurement_csv(copt.input);
  if (measurements.rows() < 2) throw std::runtime_error("clustering needs at least 2 rows");

  DatasetTable feats = copt.features == "ratio"
                           ? anthro::ratio_feature_table(measurements)
                           : measurements;
  if (copt.remove_outliers > 0.0) {
    const std::size_t before = feats.rows();
    feats = anthro::remove_outliers(feats, copt.remove_outliers);
    if (!opts.quiet && feats.rows() < before) {
      std::cout << "outlier removal dropped " << (before - feats.rows()) << " rows\n";
    }
  }

  const auto [normed, moments] = anthro::normalize(feats);
  stats::DataMatrix X(normed.rows(), normed.cols());
  X.values = normed.values;

  ClusterModel model;
  model.features = copt.features;
  model.moments = moments;

  if (!copt.pca.empty()) {
    const stats::PcaSelector selector =
        copt.pca.find('.') != std::string::npos
            ? stats::PcaSelector::variance(std::stod(copt.pca))
            : stats::PcaSelector::fixed(std::stoul(copt.pca));
    model.pca = stats::pca_fit(X, selector);
    X = stats::pca_transform(*model.pca, X);
    if (!opts.quiet) {
      std::cout << "pca kept " << model.pca->k << " components ("
                << model.pca->explained_fraction() << " of variance)\n";
    }
  }

  std::size_t k = copt.fuzzy ? copt.clusters : copt.k;
  if (!copt.select_k.empty()) {
    const auto [k_min, k_max] = parse_range(copt.select_k);
    const auto bic = stats::select_k(X, k_min, k_max, stats::KSelectionCriterion::Bic, opts.seed);
    const auto sil =
        stats::select_k(X, k_min, k_max, stats::KSelectionCriterion::Silhouette, opts.seed);
    if (!opts.quiet) {
      std::cout << "select-k: bic=" << bic.k << " silhouette=" << sil.k << "\n";
      for (const auto& [kk, score] : bic.scores) {
        std::cout << "  k=" << kk << " bic=" << score;
        for (const auto& [ks, ss] : sil.scores) {
          if (ks == kk) std::cout << " silhouette=" << ss;
        }
        std::cout << "\n";
      }
      if (bic.k != sil.k) std::cout << "criteria disagree; proceeding with the BIC choice\n";
    }
    k = bic.k;
  }

  std::vector<std::size_t> assignments(X.n, 0);
  std::vector<double> memberships;  // fuzzy only, n x k

  if (copt.fuzzy) {
    const stats::FuzzyModel fm = stats::fcm_fit(X, k, copt.fuzzifier, 1e-6, 300, opts.seed);
    model.method = "fcm";
    model.centroids = fm.centroids;
    model.fuzzifier = fm.fuzzifier;
    memberships = fm.memberships;
    for (std::size_t i = 0; i < X.n; ++i) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < k; ++j) {
        if (fm.membership(i, j) > fm.membership(i, best)) best = j;
      }
      assignments[i] = best;
    }
    if (!opts.quiet) std::cout << "fcm objective: " << fm.objective << "\n";
  } else {
    const stats::KMeansModel km = stats::kmeans_fit(X, k, opts.seed);
    model.method = "kmeans";
    model.centroids = km.centroids;
    assignments = stats::kmeans_assign_all(km, X);
    if (!opts.quiet) std::cout << "kmeans inertia: " << km.inertia << "\n";
  }
  model.k = k;
  model.d = X.d;

  // Assignments CSV (membership columns for the fuzzy path).
  {
    std::ostringstream out;
    out << "id,cluster";
    if (copt.fuzzy) {
      for (std::size_t j = 0; j < k; ++j) out << ",m" << j;
    }
    out << '\n';
    for (std::size_t i = 0; i < X.n; ++i) {
      out << i << ',' << assignments[i];
      if (copt.fuzzy) {
        for (std::size_t j = 0; j < k; ++j) out << ',' << format_double(memberships[i * k + j]);
      }
      out << '\n';
    }
    atomic_write_file(opts.out / "assignments.csv", out.str());
  }

  if (feats.has_labels()) {
    // Majority label per cluster, then chance-corrected agreement.
    std::vector<std::vector<std::size_t>> votes(k, std::vector<std::size_t>(kShapeLabelCount, 0));
    for (std::size_t i = 0; i < X.n; ++i) {
      votes[assignments[i]][static_cast<std::size_t>(ordinal(*feats.labels[i]))]++;
    }
    model.cluster_labels.assign(k, -1);
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < kShapeLabelCount; ++c) {
        if (votes[j][c] > votes[j][best]) best = c;
      }
      model.cluster_labels[j] = static_cast<int>(best);
    }

    std::vector<int> truth, mapped;
    for (std::size_t i = 0; i < X.n; ++i) {
      truth.push_back(ordinal(*feats.labels[i]));
      mapped.push_back(model.cluster_labels[assignments[i]]);
    }
    const double kappa = stats::cohen_kappa(truth, mapped);
    if (!opts.quiet) std::cout << "cohen_kappa vs majority-mapped truth: " << kappa << "\n";
  }

  save_cluster_model(model, opts.out / "model.json");
  if (!opts.quiet) {
    std::cout << "wrote assignments.csv and model.json (k=" << k << ")\n";
  }
}

}  // namespace

void register_cmd_cluster(CLI::App& app, const GlobalOptions& opts) {
  auto copt = std::make_shared<ClusterOptions>();
  CLI::App* cmd = app.add_subcommand(
      "cluster", "Outlier removal, normalization, optional PCA, then k-means or fuzzy c-means");
  cmd->add_option("input", copt->input, "Measurement CSV")->required();
  cmd->add_option("--features", copt->features, "Cluster on raw measurements or ratio features")
      ->check(CLI::IsMember({"raw", "ratio"}));
  cmd->add_option("--remove-outliers", copt->remove_outliers,
                  "Drop rows beyond this z-score before clustering (0 = keep everything)");
  cmd->add_option("--pca", copt->pca, "PCA selector: component count or variance fraction");
  cmd->add_option("--k", copt->k, "Cluster count for k-means")->check(CLI::PositiveNumber);
  cmd->add_option("--select-k", copt->select_k, "Sweep a k range (e.g. 2..5) and report BIC and "
                                                "silhouette scores");
  cmd->add_flag("--fuzzy", copt->fuzzy, "Use fuzzy c-means instead of k-means");
  cmd->add_option("--clusters", copt->clusters, "Cluster count for fuzzy c-means")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fuzzifier", copt->fuzzifier, "Fuzzy exponent m > 1");
  cmd->callback([copt, &opts]() { run(*copt, opts); });
}

}  // namespace bodyshape::cli
