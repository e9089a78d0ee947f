#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace bodyshape {

/// Binary foreground mask, row-major, 0 = background and 1 = foreground.
struct Mask {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> cells;  // width * height entries, each 0 or 1

  Mask() = default;
  Mask(std::size_t w, std::size_t h) : width(w), height(h), cells(w * h, 0) {}

  std::uint8_t& at(std::size_t x, std::size_t y) { return cells[y * width + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return cells[y * width + x]; }

  std::size_t foreground_count() const;

  /// A mask is usable when it has at least one foreground pixel.
  bool usable() const { return foreground_count() > 0; }

  bool operator==(const Mask&) const = default;
};

/// Grayscale image with row-major real intensities in [0, 1].
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  GrayImage() = default;
  GrayImage(std::size_t w, std::size_t h) : width(w), height(h), values(w * h, 0.0) {}

  double& at(std::size_t x, std::size_t y) { return values[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return values[y * width + x]; }
};

/// Foreground pixels become intensity 1, background 0.
GrayImage mask_to_gray(const Mask& mask);

/// Loads a binary (P5) or ASCII (P2) PGM with maxval 255 and thresholds
/// it into a mask: pixel > 127 is foreground. Throws std::runtime_error
/// on missing files and malformed or truncated content.
Mask load_mask(const std::filesystem::path& path);

/// Writes a mask as a P5 PGM with a single-space-separated header
/// ("P5 <w> <h> 255\n"); foreground maps to 255. The write is atomic
/// (temp file + rename).
void save_mask(const Mask& mask, const std::filesystem::path& path);

}  // namespace bodyshape
