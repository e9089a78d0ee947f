#include "bodyshape/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bodyshape/rng.hpp"

namespace bodyshape {

Mask rotate(const Mask& mask, double degrees) {
  if (!(degrees >= -45.0 && degrees <= 45.0)) {
    throw std::invalid_argument("rotation angle must be in [-45, 45] degrees");
  }
  if (degrees == 0.0) return mask;
  if (mask.foreground_count() == 0) return mask;

  // Foreground centroid as the rotation pivot.
  double sx = 0.0, sy = 0.0, n = 0.0;
  for (std::size_t y = 0; y < mask.height; ++y) {
    for (std::size_t x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) {
        sx += static_cast<double>(x);
        sy += static_cast<double>(y);
        n += 1.0;
      }
    }
  }
  const double cx = sx / n;
  const double cy = sy / n;

  const double rad = degrees * 3.14159265358979323846 / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);

  Mask out(mask.width, mask.height);
  for (std::size_t y = 0; y < mask.height; ++y) {
    for (std::size_t x = 0; x < mask.width; ++x) {
      // Inverse mapping: rotate the destination pixel back by -degrees.
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      const long xs = std::llround(cx + c * dx + s * dy);
      const long ys = std::llround(cy - s * dx + c * dy);
      if (xs >= 0 && ys >= 0 && xs < static_cast<long>(mask.width) &&
          ys < static_cast<long>(mask.height)) {
        out.at(x, y) = mask.at(static_cast<std::size_t>(xs), static_cast<std::size_t>(ys));
      }
    }
  }
  return out;
}

Mask flip_horizontal(const Mask& mask) {
  Mask out(mask.width, mask.height);
  for (std::size_t y = 0; y < mask.height; ++y) {
    for (std::size_t x = 0; x < mask.width; ++x) {
      out.at(mask.width - 1 - x, y) = mask.at(x, y);
    }
  }
  return out;
}

namespace {

std::size_t nearest_src(std::size_t dst, std::size_t dst_dim, std::size_t src_dim) {
  const double scale = static_cast<double>(src_dim) / static_cast<double>(dst_dim);
  const auto src = static_cast<std::size_t>((static_cast<double>(dst) + 0.5) * scale);
  return std::min(src, src_dim - 1);
}

double bilinear_sample(const GrayImage& img, double x, double y) {
  const double maxx = static_cast<double>(img.width) - 1.0;
  const double maxy = static_cast<double>(img.height) - 1.0;
  x = std::clamp(x, 0.0, maxx);
  y = std::clamp(y, 0.0, maxy);
  const std::size_t x0 = static_cast<std::size_t>(x);
  const std::size_t y0 = static_cast<std::size_t>(y);
  const std::size_t x1 = std::min(x0 + 1, img.width - 1);
  const std::size_t y1 = std::min(y0 + 1, img.height - 1);
  const double fx = x - static_cast<double>(x0);
  const double fy = y - static_cast<double>(y0);
  const double top = img.at(x0, y0) * (1.0 - fx) + img.at(x1, y0) * fx;
  const double bot = img.at(x0, y1) * (1.0 - fx) + img.at(x1, y1) * fx;
  return top * (1.0 - fy) + bot * fy;
}

}  // namespace

GrayImage resize(const GrayImage& img, std::size_t w, std::size_t h, ResizeMethod method) {
  if (w < 1 || h < 1) throw std::invalid_argument("resize target must be at least 1x1");
  if (w == img.width && h == img.height && method == ResizeMethod::Nearest) return img;

  GrayImage out(w, h);
  if (method == ResizeMethod::Nearest) {
    for (std::size_t y = 0; y < h; ++y) {
      const std::size_t ys = nearest_src(y, h, img.height);
      for (std::size_t x = 0; x < w; ++x) {
        out.at(x, y) = img.at(nearest_src(x, w, img.width), ys);
      }
    }
  } else {
    const double sx = static_cast<double>(img.width) / static_cast<double>(w);
    const double sy = static_cast<double>(img.height) / static_cast<double>(h);
    for (std::size_t y = 0; y < h; ++y) {
      const double yc = (static_cast<double>(y) + 0.5) * sy - 0.5;
      for (std::size_t x = 0; x < w; ++x) {
        const double xc = (static_cast<double>(x) + 0.5) * sx - 0.5;
        out.at(x, y) = bilinear_sample(img, xc, yc);
      }
    }
  }
  return out;
}

Mask resize(const Mask& mask, std::size_t w, std::size_t h, ResizeMethod method) {
  if (w < 1 || h < 1) throw std::invalid_argument("resize target must be at least 1x1");
  if (w == mask.width && h == mask.height) return mask;

  Mask out(w, h);
  if (method == ResizeMethod::Nearest) {
    for (std::size_t y = 0; y < h; ++y) {
      const std::size_t ys = nearest_src(y, h, mask.height);
      for (std::size_t x = 0; x < w; ++x) {
        out.at(x, y) = mask.at(nearest_src(x, w, mask.width), ys);
      }
    }
  } else {
    const GrayImage gray = resize(mask_to_gray(mask), w, h, ResizeMethod::Bilinear);
    for (std::size_t i = 0; i < out.cells.size(); ++i) out.cells[i] = gray.values[i] > 0.5 ? 1 : 0;
  }
  return out;
}

GrayImage sobel_edges(const GrayImage& img) {
  if (img.width < 3 || img.height < 3) {
    throw std::invalid_argument("sobel_edges requires at least a 3x3 image");
  }
  const auto clamped = [&](long x, long y) {
    x = std::clamp(x, 0L, static_cast<long>(img.width) - 1);
    y = std::clamp(y, 0L, static_cast<long>(img.height) - 1);
    return img.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  };

  GrayImage out(img.width, img.height);
  double max_mag = 0.0;
  for (long y = 0; y < static_cast<long>(img.height); ++y) {
    for (long x = 0; x < static_cast<long>(img.width); ++x) {
      const double gx = -clamped(x - 1, y - 1) + clamped(x + 1, y - 1)
                        - 2.0 * clamped(x - 1, y) + 2.0 * clamped(x + 1, y)
                        - clamped(x - 1, y + 1) + clamped(x + 1, y + 1);
      const double gy = -clamped(x - 1, y - 1) - 2.0 * clamped(x, y - 1) - clamped(x + 1, y - 1)
                        + clamped(x - 1, y + 1) + 2.0 * clamped(x, y + 1) + clamped(x + 1, y + 1);
      double mag = std::sqrt(gx * gx + gy * gy);
      if (mag < 1e-9) mag = 0.0;  // cancellation residue on flat regions
      out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = mag;
      max_mag = std::max(max_mag, mag);
    }
  }
  if (max_mag > 0.0) {
    for (double& v : out.values) v /= max_mag;
  }
  return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur requires sigma > 0");

  const long radius = static_cast<long>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (long i = -radius; i <= radius; ++i) {
    const double w = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;

  const auto pass = [&](const GrayImage& src, bool horizontal) {
    GrayImage dst(src.width, src.height);
    const long w = static_cast<long>(src.width);
    const long h = static_cast<long>(src.height);
    for (long y = 0; y < h; ++y) {
      for (long x = 0; x < w; ++x) {
        double acc = 0.0;
        for (long i = -radius; i <= radius; ++i) {
          long xs = x, ys = y;
          if (horizontal) {
            xs = std::clamp(x + i, 0L, w - 1);
          } else {
            ys = std::clamp(y + i, 0L, h - 1);
          }
          acc += kernel[static_cast<std::size_t>(i + radius)] *
                 src.at(static_cast<std::size_t>(xs), static_cast<std::size_t>(ys));
        }
        dst.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
      }
    }
    return dst;
  };

  return pass(pass(img, true), false);
}

std::vector<std::pair<ShapeLabel, std::size_t>> augment_plan(
    const std::vector<std::pair<ShapeLabel, std::size_t>>& class_counts, std::size_t target) {
  std::vector<std::pair<ShapeLabel, std::size_t>> plan;
  plan.reserve(class_counts.size());
  for (const auto& [label, count] : class_counts) {
    if (count < 1) throw std::invalid_argument("class counts must be >= 1");
    if (target < count) {
      throw std::invalid_argument("augmentation target below existing count for " +
                                  std::string(to_string(label)));
    }
    plan.emplace_back(label, target - count);
  }
  return plan;
}

Mask augment_mask(const Mask& mask, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, 0xa06bULL));
  const double degrees = rng.uniform(-45.0, 45.0);
  Mask out = rotate(mask, degrees);
  if (rng.next_double() < 0.5) out = flip_horizontal(out);
  return out;
}

}  // namespace bodyshape
