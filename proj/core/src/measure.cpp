#include "bodyshape/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bodyshape {

std::vector<std::pair<std::size_t, std::size_t>> width_profile(const Mask& mask) {
  long top = -1, bottom = -1;
  for (std::size_t y = 0; y < mask.height; ++y) {
    for (std::size_t x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) {
        if (top < 0) top = static_cast<long>(y);
        bottom = static_cast<long>(y);
        break;
      }
    }
  }
  if (top < 0) throw std::invalid_argument("width_profile: empty mask");

  std::vector<std::pair<std::size_t, std::size_t>> profile;
  profile.reserve(static_cast<std::size_t>(bottom - top + 1));
  for (long y = top; y <= bottom; ++y) {
    long left = -1, right = -1;
    for (std::size_t x = 0; x < mask.width; ++x) {
      if (mask.at(x, static_cast<std::size_t>(y))) {
        if (left < 0) left = static_cast<long>(x);
        right = static_cast<long>(x);
      }
    }
    const std::size_t width = left < 0 ? 0 : static_cast<std::size_t>(right - left + 1);
    profile.emplace_back(static_cast<std::size_t>(y), width);
  }
  return profile;
}

namespace {

// Extremal nonzero width over the band [lo, hi] of the body extent.
std::size_t band_extremum(const std::vector<std::pair<std::size_t, std::size_t>>& profile,
                          double lo, double hi, bool want_max, const char* band_name) {
  const std::size_t rows = profile.size();
  const auto first = static_cast<std::size_t>(std::llround(lo * static_cast<double>(rows - 1)));
  const auto last = static_cast<std::size_t>(std::llround(hi * static_cast<double>(rows - 1)));

  std::size_t best = want_max ? 0 : std::numeric_limits<std::size_t>::max();
  bool found = false;
  for (std::size_t i = first; i <= last && i < rows; ++i) {
    const std::size_t w = profile[i].second;
    if (w == 0) continue;
    found = true;
    best = want_max ? std::max(best, w) : std::min(best, w);
  }
  if (!found) {
    throw std::runtime_error(std::string("extract_measurements: empty band ") + band_name);
  }
  return best;
}

}  // namespace

BodyMeasurements extract_measurements(const Mask& mask) {
  const auto profile = width_profile(mask);

  std::size_t foreground_rows = 0;
  for (const auto& [row, w] : profile) {
    if (w > 0) ++foreground_rows;
  }
  if (foreground_rows < 32) {
    throw std::invalid_argument("extract_measurements: mask too small");
  }

  BodyMeasurements m;
  m.stature = static_cast<double>(profile.size());
  m.shoulder = static_cast<double>(band_extremum(profile, 0.15, 0.25, true, "shoulder"));
  m.bust = static_cast<double>(band_extremum(profile, 0.25, 0.40, true, "bust"));
  m.waist = static_cast<double>(band_extremum(profile, 0.40, 0.55, false, "waist"));
  m.hip = static_cast<double>(band_extremum(profile, 0.55, 0.70, true, "hip"));
  return m;
}

}  // namespace bodyshape
