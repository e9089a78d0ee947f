#pragma once

#include <filesystem>

#include "bodyshape/network.hpp"

namespace bodyshape {
namespace neural {

/// Writes the network as a format_version 1 JSON document: arch,
/// input_shape, and per layer {kind, params, frozen, weights, biases}
/// (composites nest "inner" / "branches"). Doubles serialize with full
/// round-trip precision, so save/load is bit-exact. Atomic write.
void save_checkpoint(const Network& net, const std::filesystem::path& path);

/// Parses and validates a checkpoint. Throws std::runtime_error on
/// version mismatch, shape/data mismatch, or non-finite weights.
Network load_checkpoint(const std::filesystem::path& path);

}  // namespace neural
}  // namespace bodyshape
