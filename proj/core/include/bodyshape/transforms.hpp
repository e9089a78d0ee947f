#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bodyshape/image.hpp"
#include "bodyshape/shape_label.hpp"

namespace bodyshape {

enum class ResizeMethod { Nearest, Bilinear };

/// Nearest-neighbor rotation about the foreground centroid. Degrees must
/// lie in [-45, 45] (the augmentation range); pixels rotated off the
/// canvas are dropped and the canvas size is unchanged. Rotating by 0 is
/// a bit-exact identity.
Mask rotate(const Mask& mask, double degrees);

/// Mirrors columns: j <-> width-1-j.
Mask flip_horizontal(const Mask& mask);

Mask resize(const Mask& mask, std::size_t w, std::size_t h,
            ResizeMethod method = ResizeMethod::Nearest);
GrayImage resize(const GrayImage& img, std::size_t w, std::size_t h, ResizeMethod method);

/// Sobel gradient magnitude, normalized to [0, 1] by its maximum (an
/// all-zero image stays zero). Borders use edge replication. Requires at
/// least a 3x3 image.
GrayImage sobel_edges(const GrayImage& img);

/// Separable Gaussian blur with kernel radius ceil(3*sigma), kernel
/// normalized to sum 1, edge replication. sigma must be positive.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// Per-class number of augmented samples needed to reach `target`:
/// target - count for each class. Requires every count >= 1 and
/// target >= max count.
std::vector<std::pair<ShapeLabel, std::size_t>> augment_plan(
    const std::vector<std::pair<ShapeLabel, std::size_t>>& class_counts, std::size_t target);

/// One seeded augmentation draw: rotation uniform in [-45, 45] degrees
/// followed by a horizontal flip with probability 1/2.
Mask augment_mask(const Mask& mask, std::uint64_t seed);

}  // namespace bodyshape
