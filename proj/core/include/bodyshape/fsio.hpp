#pragma once

#include <filesystem>
#include <string>

namespace bodyshape {

/// Writes `content` to `path` atomically: the bytes go to a sibling temp
/// file which is then renamed over the target, so interrupted runs never
/// leave truncated artifacts. Throws std::runtime_error on I/O failure.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// Reads a whole file into a string. Throws std::runtime_error when the
/// file cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace bodyshape
