#include <iostream>

#include "bodyshape/archs.hpp"
#include "bodyshape/checkpoint.hpp"
#include "bodyshape/dataset.hpp"
#include "bodyshape/metrics.hpp"
#include "common.hpp"

namespace bodyshape::cli {

namespace {

struct TrainOptions {
  std::string input;
  std::string arch = "rescnn";
  std::string freeze = "none";
  neural::TrainConfig cfg;
};

neural::FreezeSpec parse_freeze(const std::string& text) {
  if (text == "none") return neural::FreezeSpec::none();
  if (text == "all") return neural::FreezeSpec::all();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    if (head == "first") return neural::FreezeSpec::first(std::stoul(tail));
    if (head == "last") return neural::FreezeSpec::last(std::stoul(tail));
    if (head == "idx") {
      std::vector<std::size_t> indices;
      std::size_t pos = 0;
      while (pos < tail.size()) {
        const auto comma = tail.find(',', pos);
        indices.push_back(std::stoul(tail.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      return neural::FreezeSpec::at(std::move(indices));
    }
  }
  throw std::runtime_error("bad --freeze spec (none|all|first:N|last:N|idx:a,b,...): " + text);
}

void run(TrainOptions& topt, const GlobalOptions& opts) {
  std::filesystem::create_directories(opts.out);
  topt.cfg.seed = opts.seed;

  neural::Dataset data;
  if (topt.arch == "mlp13") {
    const DatasetTable measurements = load_measurement_csv(topt.input);
    if (!measurements.has_labels()) throw std::runtime_error("training data must be labeled");
    data = ratio_dataset(measurements);
  } else {
    if (!is_manifest(topt.input)) {
      throw std::runtime_error(topt.arch + " trains on masks; pass a manifest as input");
    }
    data = manifest_mask_dataset(load_manifest(topt.input), neural::kMaskInputSize);
  }

  neural::Network net =
      freeze_layers(neural::build_network(topt.arch, opts.seed), parse_freeze(topt.freeze));

  const auto [trained, curve] = neural::train(net, data, topt.cfg);

  neural::save_checkpoint(trained, opts.out / "checkpoint.json");
  eval::export_curves(curve, opts.out / "curve.csv");

  // Final validation report over the same split train() used.
  const auto [train_idx, val_idx] =
      neural::stratified_split(data, topt.cfg.validation_fraction, topt.cfg.seed);
  std::vector<int> y_true, y_pred;
  for (std::size_t i : val_idx) {
    y_true.push_back(data[i].label);
    y_pred.push_back(ordinal(neural::predict(trained, data[i].input).first));
  }
  emit_report(y_true, y_pred, opts, "val_");

  if (!opts.quiet) {
    std::cout << "final validation accuracy: " << curve.val_accuracy.back() << "\n";
  }
}

}  // namespace

void register_cmd_train(CLI::App& app, const GlobalOptions& opts) {
  auto topt = std::make_shared<TrainOptions>();
  CLI::App* cmd = app.add_subcommand(
      "train", "Train a from-scratch network (checkpoint + loss curve + validation report)");
  cmd->add_option("input", topt->input, "Labeled measurement CSV (mlp13) or mask manifest")
      ->required();
  cmd->add_option("--arch", topt->arch, "Architecture")
      ->check(CLI::IsMember({"mlp13", "rescnn", "incnn"}))
      ->required();
  cmd->add_option("--epochs", topt->cfg.epochs, "Training epochs")->check(CLI::PositiveNumber);
  cmd->add_option("--lr", topt->cfg.learning_rate, "Learning rate");
  cmd->add_option("--momentum", topt->cfg.momentum, "SGD momentum");
  cmd->add_option("--batch", topt->cfg.batch_size, "Minibatch size")->check(CLI::PositiveNumber);
  cmd->add_option("--val-frac", topt->cfg.validation_fraction, "Validation fraction");
  cmd->add_option("--freeze", topt->freeze, "Freeze spec: none|all|first:N|last:N|idx:a,b,...");
  cmd->callback([topt, &opts]() { run(*topt, opts); });
}

}  // namespace bodyshape::cli
