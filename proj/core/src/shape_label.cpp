#include "bodyshape/shape_label.hpp"

#include <stdexcept>

namespace bodyshape {

std::string_view to_string(ShapeLabel label) {
  switch (label) {
    case ShapeLabel::Apple: return "Apple";
    case ShapeLabel::Hourglass: return "Hourglass";
    case ShapeLabel::InvertedTriangle: return "InvertedTriangle";
    case ShapeLabel::Rectangle: return "Rectangle";
    case ShapeLabel::Triangle: return "Triangle";
  }
  throw std::invalid_argument("invalid ShapeLabel ordinal");
}

ShapeLabel shape_label_from_string(std::string_view name) {
  for (ShapeLabel label : all_shape_labels()) {
    if (to_string(label) == name) return label;
  }
  throw std::invalid_argument("unknown shape label name: " + std::string(name));
}

ShapeLabel shape_label_from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal >= static_cast<int>(kShapeLabelCount)) {
    throw std::invalid_argument("shape label ordinal out of range");
  }
  return static_cast<ShapeLabel>(ordinal);
}

}  // namespace bodyshape
