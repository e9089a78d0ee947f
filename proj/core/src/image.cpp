#include "bodyshape/image.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bodyshape/fsio.hpp"

namespace bodyshape {

std::size_t Mask::foreground_count() const {
  std::size_t n = 0;
  for (std::uint8_t c : cells) n += c;
  return n;
}

GrayImage mask_to_gray(const Mask& mask) {
  GrayImage img(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.cells.size(); ++i) {
    img.values[i] = mask.cells[i] ? 1.0 : 0.0;
  }
  return img;
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_pgm_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

long parse_header_number(std::istream& in, const char* what) {
  const std::string token = next_pgm_token(in);
  if (token.empty()) throw std::runtime_error(std::string("malformed PGM: missing ") + what);
  try {
    std::size_t pos = 0;
    const long value = std::stol(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("malformed PGM: bad ") + what);
  }
}

}  // namespace

Mask load_mask(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open mask file: " + path.string());

  const std::string magic = next_pgm_token(in);
  if (magic != "P5" && magic != "P2") {
    throw std::runtime_error("malformed PGM: bad magic in " + path.string());
  }
  const long w = parse_header_number(in, "width");
  const long h = parse_header_number(in, "height");
  const long maxval = parse_header_number(in, "maxval");
  if (w <= 0 || h <= 0) throw std::runtime_error("malformed PGM: zero dimensions");
  if (maxval != 255) throw std::runtime_error("malformed PGM: maxval must be 255");

  Mask mask(static_cast<std::size_t>(w), static_cast<std::size_t>(h));
  const std::size_t n = mask.cells.size();

  if (magic == "P5") {
    // The maxval token consumed exactly one trailing whitespace byte.
    std::vector<std::uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
      throw std::runtime_error("malformed PGM: truncated pixel data");
    }
    for (std::size_t i = 0; i < n; ++i) mask.cells[i] = raw[i] > 127 ? 1 : 0;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = parse_header_number(in, "pixel");
      if (v < 0 || v > 255) throw std::runtime_error("malformed PGM: pixel out of range");
      mask.cells[i] = v > 127 ? 1 : 0;
    }
  }
  return mask;
}

void save_mask(const Mask& mask, const std::filesystem::path& path) {
  if (mask.width == 0 || mask.height == 0) {
    throw std::invalid_argument("cannot save an empty mask");
  }
  std::ostringstream out;
  out << "P5 " << mask.width << ' ' << mask.height << " 255\n";
  for (std::uint8_t c : mask.cells) out.put(c ? '\xff' : '\0');
  atomic_write_file(path, out.str());
}

}  // namespace bodyshape
