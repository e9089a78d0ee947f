#pragma once

#include <cstdint>
#include <functional>

#include "bodyshape/silhouette.hpp"
#include "bodyshape/table.hpp"
#include "bodyshape/train.hpp"

namespace bodyshape {

/// Seed of corpus item `index` of class `label` under corpus seed `seed`.
/// cmd gen, the synthetic tables and the test corpora all share this
/// scheme, so the same (seed, label, index) always names the same body.
std::uint64_t corpus_item_seed(std::uint64_t seed, ShapeLabel label, std::size_t index);

/// Balanced synthetic corpus visitor: n_per_class bodies per class in
/// canonical label order, masks rendered one at a time.
void for_each_synthetic(std::size_t n_per_class, std::uint64_t seed,
                        const std::function<void(ShapeLabel, std::size_t, const Mask&,
                                                 const SilhouetteParams&)>& fn);

/// True generator widths of a balanced corpus as a labeled measurement
/// table (bust/waist/hip/shoulder widths and body height, in pixels).
/// No masks are rendered.
DatasetTable synthetic_true_measurements(std::size_t n_per_class, std::uint64_t seed);

/// Mask-extracted measurements of the same corpus.
DatasetTable synthetic_extracted_measurements(std::size_t n_per_class, std::uint64_t seed);

/// Mask resized (nearest) to size x size as a 1-channel tensor.
neural::Tensor mask_to_tensor(const Mask& mask, std::size_t size);

/// Balanced synthetic mask dataset for the CNN architectures.
neural::Dataset synthetic_mask_dataset(std::size_t n_per_class, std::uint64_t seed,
                                       std::size_t input_size);

/// Ratio-feature dataset (13-vectors) from a labeled measurement table.
neural::Dataset ratio_dataset(const DatasetTable& measurements);

/// Mask dataset from a manifest, resized to the given input size.
neural::Dataset manifest_mask_dataset(const std::vector<ManifestEntry>& entries,
                                      std::size_t input_size);

}  // namespace bodyshape
