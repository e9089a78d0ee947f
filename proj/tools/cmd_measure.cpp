#include <iostream>
#include <sstream>

#include "bodyshape/fsio.hpp"
#include "bodyshape/measure.hpp"
#include "common.hpp"

namespace bodyshape::cli {

namespace {

void run(const std::string& manifest_path, const GlobalOptions& opts) {
  const auto entries = load_manifest(manifest_path);
  if (entries.empty()) throw std::runtime_error("manifest has no rows");

  std::filesystem::create_directories(opts.out);
  DatasetTable table = make_measurement_table();
  std::ostringstream errors;
  std::size_t failed = 0;

  for (const auto& entry : entries) {
    try {
      const Mask mask = load_mask(entry.path);
      append_measurements(table, extract_measurements(mask), entry.label);
    } catch (const std::exception& e) {
      errors << entry.path.generic_string() << ',' << e.what() << '\n';
      ++failed;
    }
  }

  if (failed > 0) {
    atomic_write_file(opts.out / "errors.csv", "path,error\n" + errors.str());
  }
  if (failed == entries.size()) {
    throw std::runtime_error("every mask failed measurement; see errors.csv");
  }

  save_csv(table, opts.out / "measurements.csv");
  if (!opts.quiet) {
    std::cout << "measured " << table.rows() << " of " << entries.size() << " masks";
    if (failed > 0) std::cout << " (" << failed << " failures in errors.csv)";
    std::cout << "\n";
  }
}

}  // namespace

void register_cmd_measure(CLI::App& app, const GlobalOptions& opts) {
  auto manifest = std::make_shared<std::string>();
  CLI::App* cmd = app.add_subcommand(
      "measure", "Extract width-profile body measurements from a mask manifest");
  cmd->add_option("manifest", *manifest, "Path to manifest.csv")->required();
  cmd->callback([manifest, &opts]() { run(*manifest, opts); });
}

}  // namespace bodyshape::cli
