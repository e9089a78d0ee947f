#include "bodyshape/dataset.hpp"

#include <stdexcept>

#include "bodyshape/anthro.hpp"
#include "bodyshape/measure.hpp"
#include "bodyshape/rng.hpp"
#include "bodyshape/transforms.hpp"

namespace bodyshape {

std::uint64_t corpus_item_seed(std::uint64_t seed, ShapeLabel label, std::size_t index) {
  return derive_seed(seed, static_cast<std::uint64_t>(ordinal(label)) + 1, index);
}

void for_each_synthetic(std::size_t n_per_class, std::uint64_t seed,
                        const std::function<void(ShapeLabel, std::size_t, const Mask&,
                                                 const SilhouetteParams&)>& fn) {
  for (ShapeLabel label : all_shape_labels()) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      const auto [mask, params] = generate_silhouette(label, corpus_item_seed(seed, label, i));
      fn(label, i, mask, params);
    }
  }
}

namespace {

BodyMeasurements true_measurements(const SilhouetteParams& p) {
  BodyMeasurements m;
  m.bust = p.bust_w;
  m.waist = p.waist_w;
  m.hip = p.hip_w;
  m.shoulder = p.shoulder_w;
  m.stature = p.body_height;
  return m;
}

}  // namespace

DatasetTable synthetic_true_measurements(std::size_t n_per_class, std::uint64_t seed) {
  DatasetTable table = make_measurement_table();
  for (ShapeLabel label : all_shape_labels()) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      const SilhouetteParams p = sample_params(label, corpus_item_seed(seed, label, i));
      append_measurements(table, true_measurements(p), label);
    }
  }
  return table;
}

DatasetTable synthetic_extracted_measurements(std::size_t n_per_class, std::uint64_t seed) {
  DatasetTable table = make_measurement_table();
  for_each_synthetic(n_per_class, seed,
                     [&](ShapeLabel label, std::size_t, const Mask& mask, const SilhouetteParams&) {
                       append_measurements(table, extract_measurements(mask), label);
                     });
  return table;
}

neural::Tensor mask_to_tensor(const Mask& mask, std::size_t size) {
  const Mask small = resize(mask, size, size, ResizeMethod::Nearest);
  neural::Tensor t({1, size, size});
  for (std::size_t i = 0; i < small.cells.size(); ++i) {
    t.data[i] = small.cells[i] ? 1.0 : 0.0;
  }
  return t;
}

neural::Dataset synthetic_mask_dataset(std::size_t n_per_class, std::uint64_t seed,
                                       std::size_t input_size) {
  neural::Dataset data;
  data.reserve(n_per_class * kShapeLabelCount);
  for_each_synthetic(n_per_class, seed,
                     [&](ShapeLabel label, std::size_t, const Mask& mask, const SilhouetteParams&) {
                       data.push_back({mask_to_tensor(mask, input_size), ordinal(label)});
                     });
  return data;
}

neural::Dataset ratio_dataset(const DatasetTable& measurements) {
  if (!measurements.has_labels()) throw std::invalid_argument("ratio_dataset: labels required");
  neural::Dataset data;
  data.reserve(measurements.rows());
  for (std::size_t r = 0; r < measurements.rows(); ++r) {
    const auto feats = anthro::ratio_features(measurements_from_row(measurements, r));
    neural::Tensor t({feats.size()});
    t.data = feats;
    data.push_back({std::move(t), ordinal(*measurements.labels[r])});
  }
  return data;
}

neural::Dataset manifest_mask_dataset(const std::vector<ManifestEntry>& entries,
                                      std::size_t input_size) {
  neural::Dataset data;
  data.reserve(entries.size());
  for (const auto& e : entries) {
    data.push_back({mask_to_tensor(load_mask(e.path), input_size), ordinal(e.label)});
  }
  return data;
}

}  // namespace bodyshape
