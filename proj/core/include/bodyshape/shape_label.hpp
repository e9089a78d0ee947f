#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace bodyshape {

/// The five body shape classes. The ordinal order is canonical and is
/// shared by every file format and confusion matrix axis in the project.
enum class ShapeLabel : int {
  Apple = 0,
  Hourglass = 1,
  InvertedTriangle = 2,
  Rectangle = 3,
  Triangle = 4,
};

inline constexpr std::size_t kShapeLabelCount = 5;

constexpr std::array<ShapeLabel, kShapeLabelCount> all_shape_labels() {
  return {ShapeLabel::Apple, ShapeLabel::Hourglass, ShapeLabel::InvertedTriangle,
          ShapeLabel::Rectangle, ShapeLabel::Triangle};
}

/// Canonical class name, e.g. "InvertedTriangle".
std::string_view to_string(ShapeLabel label);

/// Parses a canonical class name. Throws std::invalid_argument on
/// unknown names; matching is case-sensitive.
ShapeLabel shape_label_from_string(std::string_view name);

inline int ordinal(ShapeLabel label) { return static_cast<int>(label); }

/// Ordinal 0..4 back to the label. Throws std::invalid_argument outside
/// that range.
ShapeLabel shape_label_from_ordinal(int ordinal);

}  // namespace bodyshape
