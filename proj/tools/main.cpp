#include <exception>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "common.hpp"

namespace {

using bodyshape::cli::GlobalOptions;

// --config supplies defaults; explicit flags override them because the
// file is applied before CLI11 parses the command line.
void apply_config_file(int argc, char** argv, GlobalOptions& opts) {
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  if (config_path.empty()) return;

  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + config_path);
  nlohmann::json doc;
  in >> doc;
  if (doc.contains("seed")) opts.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("out")) opts.out = doc["out"].get<std::string>();
  if (doc.contains("quiet")) opts.quiet = doc["quiet"].get<bool>();
  if (doc.contains("stamp")) opts.stamp = doc["stamp"].get<bool>();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bodyshape::cli;

  CLI::App app{"Body shape classification toolkit: synthetic silhouettes, measurement\n"
               "extraction, rule/cluster/neural classifiers and evaluation reports."};
  app.require_subcommand(1);

  GlobalOptions opts;
  try {
    apply_config_file(argc, argv, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  std::string config_dummy;
  app.add_option("--seed", opts.seed, "Base seed for all randomized behavior");
  app.add_option("--config", config_dummy, "JSON config file supplying option defaults");
  app.add_option("--out", opts.out, "Output directory");
  app.add_flag("--quiet", opts.quiet, "Suppress progress output");
  app.add_flag("--stamp", opts.stamp, "Embed a timestamp in report JSON (off by default)");

  register_cmd_gen(app, opts);
  register_cmd_measure(app, opts);
  register_cmd_classify(app, opts);
  register_cmd_train(app, opts);
  register_cmd_cluster(app, opts);
  register_cmd_eval(app, opts);

  // Global flags remain valid after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
