#include "bodyshape/anthro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bodyshape {
namespace anthro {

DropValues drop_values(const BodyMeasurements& m) {
  return {m.hip - m.bust, m.bust - m.waist};
}

namespace {

DimensionStats fit_dimension(const std::vector<double>& xs) {
  DimensionStats s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double x : xs) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite drop value");
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  const double n = static_cast<double>(xs.size());
  s.mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(ss / n);
  return s;
}

// Distance from x to the closed interval [lo, hi]; 0 when inside.
double interval_distance(double x, double lo, double hi) {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

}  // namespace

PopulationStats fit_population_stats(const DatasetTable& measurements) {
  if (measurements.rows() < 2) {
    throw std::invalid_argument("fit_population_stats needs at least 2 rows");
  }
  std::vector<double> hb, bw;
  hb.reserve(measurements.rows());
  bw.reserve(measurements.rows());
  for (std::size_t r = 0; r < measurements.rows(); ++r) {
    const DropValues d = drop_values(measurements_from_row(measurements, r));
    hb.push_back(d.hip_minus_bust);
    bw.push_back(d.bust_minus_waist);
  }
  PopulationStats stats;
  stats.hip_minus_bust = fit_dimension(hb);
  stats.bust_minus_waist = fit_dimension(bw);
  stats.n = measurements.rows();
  return stats;
}

ShapeLabel classify_drop(const BodyMeasurements& m, const PopulationStats& stats) {
  if (!stats.fitted()) throw std::invalid_argument("classify_drop: stats not fitted");

  const DropValues drops = drop_values(m);
  const double hb = drops.hip_minus_bust;
  if (hb < 0.0) return ShapeLabel::InvertedTriangle;
  if (hb > stats.hip_minus_bust.mean && hb <= stats.hip_minus_bust.max) {
    return ShapeLabel::Triangle;
  }

  const DimensionStats& bw = stats.bust_minus_waist;
  const double d = drops.bust_minus_waist;
  const double knee = bw.mean - 3.0 * bw.sd;

  if (d > bw.mean && d <= bw.max) return ShapeLabel::Hourglass;
  if (d >= knee && d <= bw.mean) return ShapeLabel::Rectangle;
  if (d >= bw.min && d < knee) return ShapeLabel::Apple;

  // Outside every interval: nearest by boundary distance, Rectangle on ties.
  const double d_hour = interval_distance(d, bw.mean, bw.max);
  const double d_rect = interval_distance(d, knee, bw.mean);
  const double d_apple = interval_distance(d, bw.min, knee);
  if (d_rect <= d_hour && d_rect <= d_apple) return ShapeLabel::Rectangle;
  if (d_hour <= d_apple) return ShapeLabel::Hourglass;
  return ShapeLabel::Apple;
}

const std::vector<std::string>& default_ratio_spec() {
  static const std::vector<std::string> spec = {
      "bust/waist",          "hip/waist",           "hip/bust",
      "waist/stature",       "bust/stature",        "hip/stature",
      "shoulder/bust",       "shoulder/hip",        "(bust-waist)/stature",
      "(hip-waist)/stature", "(hip-bust)/stature",  "waist/bust",
      "stature/hip",
  };
  return spec;
}

namespace {

double field_value(const BodyMeasurements& m, const std::string& name) {
  if (name == "bust") return m.bust;
  if (name == "waist") return m.waist;
  if (name == "hip") return m.hip;
  if (name == "shoulder") return m.shoulder;
  if (name == "stature") return m.stature;
  throw std::invalid_argument("unknown measurement name: " + name);
}

double eval_ratio(const BodyMeasurements& m, const std::string& spec) {
  double numerator = 0.0;
  std::string denom_name;
  const auto slash = spec.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("ratio spec needs '/': " + spec);
  const std::string num = spec.substr(0, slash);
  denom_name = spec.substr(slash + 1);

  if (!num.empty() && num.front() == '(') {
    if (num.back() != ')') throw std::invalid_argument("bad ratio spec: " + spec);
    const std::string inner = num.substr(1, num.size() - 2);
    const auto minus = inner.find('-');
    if (minus == std::string::npos) throw std::invalid_argument("bad ratio spec: " + spec);
    numerator = field_value(m, inner.substr(0, minus)) - field_value(m, inner.substr(minus + 1));
  } else {
    numerator = field_value(m, num);
  }

  const double denom = field_value(m, denom_name);
  if (!(denom > 0.0)) throw std::invalid_argument("ratio denominator must be positive: " + spec);
  return numerator / denom;
}

}  // namespace

std::vector<double> ratio_features(const BodyMeasurements& m,
                                   const std::vector<std::string>& spec) {
  std::vector<double> out;
  out.reserve(spec.size());
  for (const auto& s : spec) out.push_back(eval_ratio(m, s));
  return out;
}

DatasetTable ratio_feature_table(const DatasetTable& measurements,
                                 const std::vector<std::string>& spec) {
  DatasetTable out;
  out.columns = spec;
  for (std::size_t r = 0; r < measurements.rows(); ++r) {
    const auto feats = ratio_features(measurements_from_row(measurements, r), spec);
    out.append_row(feats, measurements.has_labels() ? measurements.labels[r] : std::nullopt);
  }
  return out;
}

namespace {

ColumnMoments column_moments(const DatasetTable& table) {
  const std::size_t n = table.rows();
  const std::size_t d = table.cols();
  ColumnMoments m;
  m.mean.assign(d, 0.0);
  m.sd.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) m.mean[c] += table.at(r, c);
  }
  for (double& v : m.mean) v /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dv = table.at(r, c) - m.mean[c];
      m.sd[c] += dv * dv;
    }
  }
  for (double& v : m.sd) v = std::sqrt(v / static_cast<double>(n));
  return m;
}

}  // namespace

DatasetTable remove_outliers(const DatasetTable& table, double z_threshold) {
  if (!(z_threshold > 0.0)) throw std::invalid_argument("z threshold must be positive");
  if (table.rows() == 0) return table;

  const ColumnMoments m = column_moments(table);
  DatasetTable out;
  out.columns = table.columns;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    bool keep = true;
    for (std::size_t c = 0; c < table.cols() && keep; ++c) {
      if (m.sd[c] == 0.0) continue;  // constant column carries no outlier signal
      const double z = (table.at(r, c) - m.mean[c]) / m.sd[c];
      if (std::abs(z) > z_threshold) keep = false;
    }
    if (keep) {
      std::vector<double> row(table.cols());
      for (std::size_t c = 0; c < table.cols(); ++c) row[c] = table.at(r, c);
      out.append_row(row, table.has_labels() ? table.labels[r] : std::nullopt);
    }
  }
  return out;
}

std::pair<DatasetTable, ColumnMoments> normalize(const DatasetTable& table) {
  if (table.rows() < 2) throw std::invalid_argument("normalize needs at least 2 rows");
  const ColumnMoments m = column_moments(table);

  DatasetTable out = table;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out.at(r, c) = m.sd[c] == 0.0 ? 0.0 : (out.at(r, c) - m.mean[c]) / m.sd[c];
    }
  }
  return {out, m};
}

}  // namespace anthro
}  // namespace bodyshape
