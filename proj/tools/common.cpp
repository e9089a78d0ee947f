#include "common.hpp"

#include <iostream>
#include <sstream>

#include "bodyshape/fsio.hpp"
#include "bodyshape/metrics.hpp"

namespace bodyshape::cli {

void write_predictions(const std::vector<PredictionRow>& rows,
                       const std::filesystem::path& path) {
  std::ostringstream out;
  const bool with_actual = !rows.empty() && rows.front().actual.has_value();
  out << (with_actual ? "id,predicted,actual\n" : "id,predicted\n");
  for (const auto& row : rows) {
    out << row.id << ',' << to_string(row.predicted);
    if (with_actual) out << ',' << to_string(*row.actual);
    out << '\n';
  }
  atomic_write_file(path, out.str());
}

std::vector<int> load_label_column(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path.string());

  const auto header = split_csv_line(line);
  std::size_t column = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "predicted" || header[i] == "label") {
      column = i;
      break;
    }
  }
  if (column == header.size()) {
    throw std::runtime_error("no label or predicted column in " + path.string());
  }

  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= column) throw std::runtime_error("short CSV row in " + path.string());
    labels.push_back(ordinal(shape_label_from_string(fields[column])));
  }
  return labels;
}

void emit_report(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                 const GlobalOptions& opts, const std::string& prefix) {
  const auto cm = eval::confusion_matrix(y_true, y_pred);
  const auto rep = eval::report(cm);

  std::string json_doc = eval::render_report_json(rep);
  if (opts.stamp) {
    // Opt-in timestamping; default artifacts stay byte-stable.
    std::ostringstream stamped;
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    stamped << "{\n  \"generated_at\": \"" << buf << "\"," << json_doc.substr(1);
    json_doc = stamped.str();
  }
  atomic_write_file(opts.out / (prefix + "report.json"), json_doc);
  atomic_write_file(opts.out / (prefix + "report.txt"), eval::render_report_text(rep));

  if (!opts.quiet) {
    std::cout << eval::render_report_text(rep);
    std::cout << "accuracy: " << rep.accuracy << "\n";
  }
}

bool is_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) return false;
  const auto header = split_csv_line(line);
  return header.size() == 2 && header[0] == "path" && header[1] == "label";
}

}  // namespace bodyshape::cli
