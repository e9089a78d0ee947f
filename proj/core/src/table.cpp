#include "bodyshape/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "bodyshape/fsio.hpp"

namespace bodyshape {

void DatasetTable::append_row(const std::vector<double>& row, std::optional<ShapeLabel> label) {
  if (row.size() != cols()) throw std::invalid_argument("row width does not match table");
  if (rows() > 0 && has_labels() != label.has_value()) {
    throw std::invalid_argument("mixed labeled and unlabeled rows");
  }
  values.insert(values.end(), row.begin(), row.end());
  if (label.has_value()) labels.push_back(label);
}

DatasetTable make_measurement_table() {
  DatasetTable t;
  for (const char* c : kMeasurementColumns) t.columns.emplace_back(c);
  return t;
}

void append_measurements(DatasetTable& table, const BodyMeasurements& m,
                         std::optional<ShapeLabel> label) {
  table.append_row({m.bust, m.waist, m.hip, m.shoulder, m.stature}, label);
}

BodyMeasurements measurements_from_row(const DatasetTable& table, std::size_t row) {
  if (table.cols() < 5) throw std::invalid_argument("table is not a measurement table");
  BodyMeasurements m;
  m.bust = table.at(row, 0);
  m.waist = table.at(row, 1);
  m.hip = table.at(row, 2);
  m.shoulder = table.at(row, 3);
  m.stature = table.at(row, 4);
  return m;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  fields.push_back(field);
  return fields;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("bad numeric value '" + s + "' on CSV line " +
                             std::to_string(line_no));
  }
}

}  // namespace

DatasetTable load_measurement_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path.string());

  const auto header = split_csv_line(line);
  const bool labeled = header.size() == 6 && header[5] == "label";
  if (!(header.size() == 5 || labeled)) {
    throw std::runtime_error("unexpected measurement CSV header in " + path.string());
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (header[i] != kMeasurementColumns[i]) {
      throw std::runtime_error("unexpected measurement CSV header in " + path.string());
    }
  }

  DatasetTable table = make_measurement_table();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("wrong field count on CSV line " + std::to_string(line_no));
    }
    std::vector<double> row(5);
    for (std::size_t i = 0; i < 5; ++i) row[i] = parse_double(fields[i], line_no);
    std::optional<ShapeLabel> label;
    if (labeled) label = shape_label_from_string(fields[5]);
    table.append_row(row, label);
  }
  return table;
}

void save_csv(const DatasetTable& table, const std::filesystem::path& path) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.cols(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  if (table.has_labels()) out << ",label";
  out << '\n';

  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      if (c) out << ',';
      out << format_double(table.at(r, c));
    }
    if (table.has_labels()) {
      out << ',';
      if (table.labels[r].has_value()) out << to_string(*table.labels[r]);
    }
    out << '\n';
  }
  atomic_write_file(path, out.str());
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty manifest: " + path.string());
  {
    const auto header = split_csv_line(line);
    if (header.size() != 2 || header[0] != "path" || header[1] != "label") {
      throw std::runtime_error("manifest must start with 'path,label': " + path.string());
    }
  }

  std::vector<ManifestEntry> entries;
  const auto base = path.parent_path();
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) throw std::runtime_error("bad manifest row: " + line);
    std::filesystem::path p = fields[0];
    if (p.is_relative()) p = base / p;
    entries.push_back({p, shape_label_from_string(fields[1])});
  }
  return entries;
}

void save_manifest(const std::vector<ManifestEntry>& entries,
                   const std::filesystem::path& path) {
  std::ostringstream out;
  out << "path,label\n";
  const auto base = path.parent_path();
  for (const auto& e : entries) {
    std::filesystem::path p = e.path;
    // Store paths relative to the manifest when possible.
    auto rel = p.lexically_relative(base);
    if (!rel.empty() && rel.native()[0] != '.') p = rel;
    out << p.generic_string() << ',' << to_string(e.label) << '\n';
  }
  atomic_write_file(path, out.str());
}

}  // namespace bodyshape
