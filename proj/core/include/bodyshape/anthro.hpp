#pragma once

#include <string>
#include <vector>

#include "bodyshape/measure.hpp"
#include "bodyshape/shape_label.hpp"
#include "bodyshape/table.hpp"

namespace bodyshape {
namespace anthro {

/// The two drop values: girth differences used as 1-D decision
/// statistics for the rule classifier.
struct DropValues {
  double hip_minus_bust = 0;
  double bust_minus_waist = 0;
};

struct DimensionStats {
  double mean = 0;
  double sd = 0;  // population convention, divisor n
  double min = 0;
  double max = 0;
};

/// Reference-cohort statistics of both drop dimensions.
struct PopulationStats {
  DimensionStats hip_minus_bust;
  DimensionStats bust_minus_waist;
  std::size_t n = 0;

  bool fitted() const { return n >= 2; }
};

DropValues drop_values(const BodyMeasurements& m);

/// Mean/sd/min/max of both drop dimensions over a measurement table.
/// Requires at least two rows and finite values.
PopulationStats fit_population_stats(const DatasetTable& measurements);

/// Interval rule classifier over drop values:
///   1. hip - bust < 0                         -> InvertedTriangle
///   2. hip - bust in (mean, max]              -> Triangle
///   3. otherwise decide on d = bust - waist:
///        d in (mean, max]                     -> Hourglass
///        d in [mean - 3 sd, mean]             -> Rectangle
///        d in [min, mean - 3 sd)              -> Apple
///   4. d outside all three intervals          -> nearest interval by
///      boundary distance, ties preferring Rectangle.
/// Stats must be fitted (n >= 2).
ShapeLabel classify_drop(const BodyMeasurements& m, const PopulationStats& stats);

/// The default 13-entry ratio feature set.
const std::vector<std::string>& default_ratio_spec();

/// Named measurement ratios evaluated in spec order. Supported names are
/// "a/b" and "(a-b)/c" over bust, waist, hip, shoulder, stature.
/// Denominators must be positive.
std::vector<double> ratio_features(const BodyMeasurements& m,
                                   const std::vector<std::string>& spec = default_ratio_spec());

/// Ratio features for every row of a measurement table; labels carry over.
DatasetTable ratio_feature_table(const DatasetTable& measurements,
                                 const std::vector<std::string>& spec = default_ratio_spec());

/// Removes rows whose z-score exceeds the threshold in any column;
/// z-scores use the column mean/sd of the input table and zero-sd
/// columns are skipped. Threshold must be positive.
DatasetTable remove_outliers(const DatasetTable& table, double z_threshold = 3.0);

struct ColumnMoments {
  std::vector<double> mean;
  std::vector<double> sd;
};

/// Column-standardizes the table to mean 0 / sd 1 (population sd;
/// zero-sd columns map to 0) and returns the moments used.
std::pair<DatasetTable, ColumnMoments> normalize(const DatasetTable& table);

}  // namespace anthro
}  // namespace bodyshape
