#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bodyshape/image.hpp"

namespace bodyshape {

/// Linear body measurements in one shared unit (pixels when derived from
/// a mask). All values are positive and finite.
struct BodyMeasurements {
  double bust = 0;
  double waist = 0;
  double hip = 0;
  double shoulder = 0;
  double stature = 0;
};

/// Per-row horizontal extent of the foreground, restricted to the rows
/// between the topmost and bottommost foreground rows. Width is
/// rightmost - leftmost + 1, or 0 for an empty row. Throws on an empty
/// mask.
std::vector<std::pair<std::size_t, std::size_t>> width_profile(const Mask& mask);

/// Width-profile proxies for the classic girth measurements. With body
/// rows [top, bottom]: stature = bottom - top + 1, shoulder = max width
/// in the [0.15, 0.25] stature band, bust = max in [0.25, 0.40], waist =
/// min in [0.40, 0.55], hip = max in [0.55, 0.70], bands measured from
/// the top. Requires a usable mask spanning at least 32 foreground rows;
/// throws "mask too small" / "empty band" otherwise.
BodyMeasurements extract_measurements(const Mask& mask);

}  // namespace bodyshape
