#pragma once

#include <cstdint>

#include "bodyshape/image.hpp"
#include "bodyshape/shape_label.hpp"

namespace bodyshape {

/// Parameters of one synthetic silhouette. All widths are full widths in
/// pixels of the rendered canvas.
struct SilhouetteParams {
  std::size_t canvas_width = 0;
  std::size_t canvas_height = 0;
  double bust_w = 0;
  double waist_w = 0;
  double hip_w = 0;
  double shoulder_w = 0;
  double body_height = 0;
  double noise_sigma = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultCanvasWidth = 128;
inline constexpr std::size_t kDefaultCanvasHeight = 256;
inline constexpr double kDefaultNoiseSigma = 0.5;

/// Draws width parameters for `label` from the label's band. The bands
/// are disjoint in ratio space, so the defining inequality of each class
/// (e.g. hips wider than bust for Triangle) holds for every seed.
SilhouetteParams sample_params(ShapeLabel label, std::uint64_t seed,
                               std::size_t canvas_width = kDefaultCanvasWidth,
                               std::size_t canvas_height = kDefaultCanvasHeight,
                               double noise_sigma = kDefaultNoiseSigma);

/// Renders a filled, vertically connected body silhouette (head, neck,
/// shoulders, torso tapering shoulder-bust-waist-hip, legs) from explicit
/// parameters. Edge jitter is drawn from params.seed, so rendering is a
/// pure function of its argument.
Mask render_silhouette(const SilhouetteParams& params);

/// sample_params + render_silhouette. Deterministic in (label, seed).
std::pair<Mask, SilhouetteParams> generate_silhouette(ShapeLabel label, std::uint64_t seed);

}  // namespace bodyshape
