#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bodyshape/measure.hpp"
#include "bodyshape/shape_label.hpp"

namespace bodyshape {

/// Rectangular numeric table with named columns and an optional label per
/// row. This is the working form for measurement and feature data.
struct DatasetTable {
  std::vector<std::string> columns;
  std::vector<double> values;  // row-major, rows() x cols()
  std::vector<std::optional<ShapeLabel>> labels;  // empty, or one per row

  std::size_t cols() const { return columns.size(); }
  std::size_t rows() const { return columns.empty() ? 0 : values.size() / columns.size(); }

  double& at(std::size_t row, std::size_t col) { return values[row * cols() + col]; }
  double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }

  bool has_labels() const { return !labels.empty(); }

  void append_row(const std::vector<double>& row, std::optional<ShapeLabel> label = std::nullopt);
};

inline constexpr const char* kMeasurementColumns[] = {"bust", "waist", "hip", "shoulder",
                                                      "stature"};

/// Builds the canonical 5-column measurement table.
DatasetTable make_measurement_table();

void append_measurements(DatasetTable& table, const BodyMeasurements& m,
                         std::optional<ShapeLabel> label = std::nullopt);

BodyMeasurements measurements_from_row(const DatasetTable& table, std::size_t row);

/// Reads a measurement CSV with header bust,waist,hip,shoulder,stature
/// and an optional trailing label column. Values must be finite; throws
/// std::runtime_error on schema or parse errors.
DatasetTable load_measurement_csv(const std::filesystem::path& path);

/// Writes a table as CSV (atomic). Numeric cells use full round-trip
/// precision; the label column is appended when labels are present.
void save_csv(const DatasetTable& table, const std::filesystem::path& path);

/// Dataset manifest: rows of (mask path, label).
struct ManifestEntry {
  std::filesystem::path path;
  ShapeLabel label;
};

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);

/// Splits one CSV line on commas; no quoting (paths and class names never
/// contain commas in this project's formats).
std::vector<std::string> split_csv_line(const std::string& line);

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);

}  // namespace bodyshape
