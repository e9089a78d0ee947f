#include "bodyshape/silhouette.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bodyshape/rng.hpp"

namespace bodyshape {

namespace {

// Vertical layout of the body as fractions of body height, shared by the
// renderer and (implicitly) by the measurement bands in measure.cpp: the
// shoulder plateau, bust plateau, waist minimum and hip maximum each sit
// inside the corresponding measurement band.
constexpr double kHeadEnd = 0.115;
constexpr double kNeckEnd = 0.14;
constexpr double kShoulderStart = 0.155;
constexpr double kShoulderEnd = 0.245;
constexpr double kBustStart = 0.30;
constexpr double kBustEnd = 0.36;
constexpr double kWaistCenter = 0.475;
constexpr double kHipStart = 0.545;
constexpr double kHipCenter = 0.625;
constexpr double kLegStart = 0.70;
constexpr double kCrotch = 0.72;
constexpr double kGapFull = 0.80;

double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

double segment(double t, double t0, double t1, double w0, double w1) {
  const double u = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
  return w0 + (w1 - w0) * smoothstep(u);
}

// Noiseless outer half-width of the body at vertical fraction t in [0, 1].
double body_half_width(double t, const SilhouetteParams& p) {
  const double shoulder = p.shoulder_w / 2.0;
  const double bust = p.bust_w / 2.0;
  const double waist = p.waist_w / 2.0;
  const double hip = p.hip_w / 2.0;
  const double head = 0.44 * shoulder;
  const double neck = std::max(2.0, 0.30 * shoulder);

  if (t < kHeadEnd) {
    const double c = kHeadEnd / 2.0;
    const double rel = (t - c) / c;
    return std::max(1.0, head * std::sqrt(std::max(0.0, 1.0 - rel * rel)));
  }
  if (t < kNeckEnd) return neck;
  if (t < kShoulderStart) return segment(t, kNeckEnd, kShoulderStart, neck, shoulder);
  if (t < kShoulderEnd) return shoulder;
  if (t < kBustStart) return segment(t, kShoulderEnd, kBustStart, shoulder, bust);
  if (t < kBustEnd) return bust;
  if (t < kWaistCenter) return segment(t, kBustEnd, kWaistCenter, bust, waist);
  // The hip rise finishes just before the hip measurement band so the
  // band maximum lands on hip itself for every label, waist > hip or not.
  if (t < kHipStart) return segment(t, kWaistCenter, kHipStart, waist, 0.99 * hip);
  if (t < kHipCenter) return segment(t, kHipStart, kHipCenter, 0.99 * hip, hip);
  if (t < kLegStart) return segment(t, kHipCenter, kLegStart, hip, 0.98 * hip);
  return segment(t, kLegStart, 1.0, 0.98 * hip, 0.42 * hip);
}

// Half-width of the gap between the legs; zero above the crotch.
double leg_gap_half(double t, const SilhouetteParams& p) {
  if (t < kCrotch) return 0.0;
  const double full = 0.10 * (p.hip_w / 2.0);
  return segment(t, kCrotch, kGapFull, 0.0, full);
}

void paint_span(Mask& mask, std::size_t row, double cx, double lo, double hi) {
  if (hi < lo) return;
  const long left = static_cast<long>(std::ceil(cx + lo));
  const long right = static_cast<long>(std::floor(cx + hi));
  const long w = static_cast<long>(mask.width);
  for (long x = std::max(0L, left); x <= std::min(w - 1, right); ++x) {
    mask.at(static_cast<std::size_t>(x), row) = 1;
  }
}

}  // namespace

SilhouetteParams sample_params(ShapeLabel label, std::uint64_t seed,
                               std::size_t canvas_width, std::size_t canvas_height,
                               double noise_sigma) {
  if (canvas_width < 16 || canvas_height < 32) {
    throw std::invalid_argument("canvas too small for a silhouette");
  }
  SplitMix64 rng(derive_seed(seed, 0x5117u, static_cast<std::uint64_t>(ordinal(label))));

  SilhouetteParams p;
  p.canvas_width = canvas_width;
  p.canvas_height = canvas_height;
  p.noise_sigma = noise_sigma;
  p.seed = seed;
  p.body_height = rng.uniform(0.88, 0.94) * static_cast<double>(canvas_height);

  const double base = rng.uniform(0.45, 0.60) * static_cast<double>(canvas_width);

  switch (label) {
    case ShapeLabel::Hourglass:
      p.bust_w = rng.uniform(0.90, 1.00) * base;
      p.waist_w = rng.uniform(0.65, 0.75) * p.bust_w;
      p.hip_w = rng.uniform(1.025, 1.045) * p.bust_w;
      p.shoulder_w = rng.uniform(0.95, 1.03) * p.bust_w;
      break;
    case ShapeLabel::Rectangle:
      p.bust_w = rng.uniform(0.90, 1.00) * base;
      p.waist_w = rng.uniform(0.98, 1.00) * p.bust_w;
      p.hip_w = rng.uniform(1.025, 1.045) * p.bust_w;
      p.shoulder_w = rng.uniform(0.95, 1.03) * p.bust_w;
      break;
    case ShapeLabel::Apple:
      p.bust_w = rng.uniform(0.90, 1.00) * base;
      p.waist_w = rng.uniform(1.08, 1.15) * p.bust_w;
      p.hip_w = rng.uniform(1.025, 1.045) * p.bust_w;
      p.shoulder_w = rng.uniform(0.95, 1.03) * p.bust_w;
      break;
    case ShapeLabel::Triangle:
      p.bust_w = rng.uniform(0.85, 0.95) * base;
      p.waist_w = rng.uniform(0.80, 0.90) * p.bust_w;
      p.hip_w = rng.uniform(1.40, 1.55) * p.bust_w;
      p.shoulder_w = rng.uniform(0.95, 1.03) * p.bust_w;
      break;
    case ShapeLabel::InvertedTriangle:
      p.hip_w = rng.uniform(0.85, 0.95) * base;
      p.bust_w = rng.uniform(1.10, 1.20) * p.hip_w;
      p.waist_w = rng.uniform(0.80, 0.90) * p.hip_w;
      p.shoulder_w = rng.uniform(1.00, 1.04) * p.bust_w;
      break;
  }
  return p;
}

Mask render_silhouette(const SilhouetteParams& p) {
  if (p.canvas_width < 1 || p.canvas_height < 1) {
    throw std::invalid_argument("silhouette canvas must be non-empty");
  }
  if (p.body_height < 16 || p.body_height > static_cast<double>(p.canvas_height)) {
    throw std::invalid_argument("body height outside canvas");
  }
  if (p.noise_sigma < 0) throw std::invalid_argument("noise sigma must be >= 0");

  Mask mask(p.canvas_width, p.canvas_height);
  SplitMix64 noise(derive_seed(p.seed, 0x907fULL, 0xed6eULL));

  const long body_rows = static_cast<long>(std::llround(p.body_height));
  const long top = (static_cast<long>(p.canvas_height) - body_rows) / 2;
  const double cx = (static_cast<double>(p.canvas_width) - 1.0) / 2.0;

  for (long r = 0; r < body_rows; ++r) {
    const double t = body_rows > 1 ? static_cast<double>(r) / static_cast<double>(body_rows - 1) : 0.0;
    double half = body_half_width(t, p);

    double jitter_l = 0.0, jitter_r = 0.0;
    if (p.noise_sigma > 0) {
      jitter_l = std::llround(noise.gaussian() * p.noise_sigma);
      jitter_r = std::llround(noise.gaussian() * p.noise_sigma);
    }
    const double left = -std::max(1.0, half + jitter_l);
    const double right = std::max(1.0, half + jitter_r);

    const std::size_t row = static_cast<std::size_t>(top + r);
    const double gap = leg_gap_half(t, p);
    if (gap > 0.5) {
      paint_span(mask, row, cx, left, -gap);
      paint_span(mask, row, cx, gap, right);
    } else {
      paint_span(mask, row, cx, left, right);
    }
  }
  return mask;
}

std::pair<Mask, SilhouetteParams> generate_silhouette(ShapeLabel label, std::uint64_t seed) {
  SilhouetteParams params = sample_params(label, seed);
  return {render_silhouette(params), params};
}

}  // namespace bodyshape
