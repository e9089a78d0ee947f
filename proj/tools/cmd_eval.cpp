#include <iostream>

#include "bodyshape/kappa.hpp"
#include "common.hpp"

namespace bodyshape::cli {

namespace {

struct EvalOptions {
  std::string truth;
  std::string pred;
};

void run(const EvalOptions& eopt, const GlobalOptions& opts) {
  std::filesystem::create_directories(opts.out);

  const std::vector<int> y_true = load_label_column(eopt.truth);
  const std::vector<int> y_pred = load_label_column(eopt.pred);
  if (y_true.size() != y_pred.size()) {
    throw std::runtime_error("labelings differ in length: " + std::to_string(y_true.size()) +
                             " vs " + std::to_string(y_pred.size()));
  }

  emit_report(y_true, y_pred, opts, "");
  const double kappa = stats::cohen_kappa(y_true, y_pred);
  if (!opts.quiet) std::cout << "cohen_kappa: " << kappa << "\n";
}

}  // namespace

void register_cmd_eval(CLI::App& app, const GlobalOptions& opts) {
  auto eopt = std::make_shared<EvalOptions>();
  CLI::App* cmd = app.add_subcommand(
      "eval", "Confusion matrix, classification report and Cohen's kappa of two labelings");
  cmd->add_option("--truth", eopt->truth, "CSV carrying the reference labels")->required();
  cmd->add_option("--pred", eopt->pred, "CSV carrying the predicted labels")->required();
  cmd->callback([eopt, &opts]() { run(*eopt, opts); });
}

}  // namespace bodyshape::cli
