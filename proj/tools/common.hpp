#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bodyshape/table.hpp"

namespace bodyshape::cli {

// Exit codes are a stable contract: 0 success, 1 runtime or data error,
// 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::filesystem::path out = ".";
  bool quiet = false;
  bool stamp = false;
};

struct PredictionRow {
  std::string id;
  ShapeLabel predicted;
  std::optional<ShapeLabel> actual;
};

void write_predictions(const std::vector<PredictionRow>& rows,
                       const std::filesystem::path& path);

/// Label sequence of a CSV: the `predicted` column of a predictions
/// file, or the `label` column of a measurement CSV or manifest.
std::vector<int> load_label_column(const std::filesystem::path& path);

/// Writes <prefix>report.txt / <prefix>report.json under opts.out and
/// prints the accuracy unless quiet.
void emit_report(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                 const GlobalOptions& opts, const std::string& prefix);

/// True when the CSV at `path` is a mask manifest (path,label header).
bool is_manifest(const std::filesystem::path& path);

void register_cmd_gen(CLI::App& app, const GlobalOptions& opts);
void register_cmd_measure(CLI::App& app, const GlobalOptions& opts);
void register_cmd_classify(CLI::App& app, const GlobalOptions& opts);
void register_cmd_train(CLI::App& app, const GlobalOptions& opts);
void register_cmd_cluster(CLI::App& app, const GlobalOptions& opts);
void register_cmd_eval(CLI::App& app, const GlobalOptions& opts);

}  // namespace bodyshape::cli
