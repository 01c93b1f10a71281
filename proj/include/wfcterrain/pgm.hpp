#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wfcterrain/heightmap.hpp"

namespace wfct {

/// Render as binary PGM (P5, maxval 65535, big-endian samples) with
/// linear min-max normalization. A constant grid maps to mid-gray 32768.
inline std::vector<unsigned char> render_pgm(const HeightMap& hm) {
  if (hm.cells.empty()) throw RangeError("cannot render an empty grid");
  const auto [lo_it, hi_it] = std::minmax_element(hm.cells.begin(), hm.cells.end());
  const std::int32_t lo = *lo_it;
  const std::int32_t hi = *hi_it;

  const std::string header =
      "P5\n" + std::to_string(hm.cols()) + " " + std::to_string(hm.rows()) + "\n65535\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  bytes.reserve(bytes.size() + static_cast<std::size_t>(hm.rows()) * hm.cols() * 2);

  for (std::int32_t v : hm.cells) {
    std::uint16_t s = 32768;
    if (hi != lo) {
      s = static_cast<std::uint16_t>(
          std::llround((v - lo) * 65535.0 / (static_cast<double>(hi) - lo)));
    }
    bytes.push_back(static_cast<unsigned char>(s >> 8));
    bytes.push_back(static_cast<unsigned char>(s & 0xff));
  }
  return bytes;
}

}  // namespace wfct
