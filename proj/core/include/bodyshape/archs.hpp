#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bodyshape/network.hpp"

namespace bodyshape {
namespace neural {

inline constexpr std::size_t kMaskInputSize = 32;

/// Builds one of the reference architectures with seeded weight init:
///   mlp13  - Dense 13->32, ReLU, Dense 32->5 over ratio features
///   rescnn - Conv 1->8 + ReLU with two residual blocks and interleaved
///            max-pooling over 1x32x32 masks, Dense head
///   incnn  - one inception block (1x1 / 3x3 / 5x5 branches) over
///            1x32x32 masks, max-pooling, Dense head
/// Throws std::invalid_argument for unknown names.
Network build_network(const std::string& arch, std::uint64_t seed);

const std::vector<std::string>& known_archs();

}  // namespace neural
}  // namespace bodyshape
