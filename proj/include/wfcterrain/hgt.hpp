#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wfcterrain/heightmap.hpp"

namespace wfct {

// SRTM .hgt tiles: square grids of big-endian signed 16-bit samples,
// row-major starting at the northwest corner. SRTM1 tiles are
// 3601 x 3601; any square size is accepted so tests can use small
// fixtures.

/// Decode an .hgt byte image. Byte count must be 2*s*s for integer s >= 1.
inline HeightMap parse_hgt(std::span<const unsigned char> bytes) {
  const std::size_t n = bytes.size();
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n) / 2.0)));
  if (side < 1 || 2 * side * side != n) {
    throw ParseError("malformed .hgt file: " + std::to_string(n) +
                     " bytes is not 2*s*s for any side s >= 1");
  }
  std::vector<std::int32_t> cells(side * side);
  for (std::size_t i = 0; i < side * side; ++i) {
    const auto hi = static_cast<std::uint16_t>(bytes[2 * i]);
    const auto lo = static_cast<std::uint16_t>(bytes[2 * i + 1]);
    cells[i] = static_cast<std::int16_t>(static_cast<std::uint16_t>(hi << 8 | lo));
  }
  return make_heightmap(static_cast<int>(side), static_cast<int>(side), std::move(cells));
}

/// Re-encode a heightmap as .hgt bytes. Inverse of parse_hgt for
/// int16-valued grids.
inline std::vector<unsigned char> encode_hgt(const HeightMap& hm) {
  if (hm.rows() != hm.cols()) throw RangeError(".hgt tiles must be square");
  std::vector<unsigned char> bytes;
  bytes.reserve(static_cast<std::size_t>(hm.rows()) * hm.cols() * 2);
  for (std::int32_t v : hm.cells) {
    if (v < INT16_MIN || v > INT16_MAX) throw RangeError("sample does not fit in 16 bits");
    const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(v));
    bytes.push_back(static_cast<unsigned char>(u >> 8));
    bytes.push_back(static_cast<unsigned char>(u & 0xff));
  }
  return bytes;
}

}  // namespace wfct
