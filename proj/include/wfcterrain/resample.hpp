#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "wfcterrain/heightmap.hpp"

namespace wfct {

/// Copy the h x w sub-grid whose top-left cell is (row0, col0).
/// The window must lie fully inside the map and contain no voids.
inline HeightMap window(const HeightMap& hm, int row0, int col0, int h, int w) {
  if (h < 1 || w < 1) throw RangeError("window dimensions must be at least 1x1");
  if (row0 < 0 || col0 < 0 || row0 + h > hm.rows() || col0 + w > hm.cols()) {
    throw RangeError("window [" + std::to_string(row0) + "," + std::to_string(col0) + " " +
                     std::to_string(h) + "x" + std::to_string(w) + "] exceeds " +
                     std::to_string(hm.rows()) + "x" + std::to_string(hm.cols()) + " map");
  }
  Grid<std::int32_t> out(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::int32_t v = hm.at(row0 + r, col0 + c);
      if (v == hm.nodata) {
        throw VoidDataError("window contains nodata at (" + std::to_string(row0 + r) + "," +
                            std::to_string(col0 + c) + ")");
      }
      out(r, c) = v;
    }
  }
  return HeightMap{std::move(out), hm.nodata};
}

/// Shrink by an integer factor with pixel-center-aligned bilinear
/// interpolation; results round to the nearest meter (ties away from
/// zero). Output is floor(rows/factor) x floor(cols/factor).
inline HeightMap downsample_bilinear(const HeightMap& hm, int factor) {
  if (factor < 1) throw RangeError("downsample factor must be >= 1");
  if (factor > hm.rows() || factor > hm.cols()) {
    throw RangeError("downsample factor " + std::to_string(factor) + " exceeds " +
                     std::to_string(hm.rows()) + "x" + std::to_string(hm.cols()) + " map");
  }
  const int out_rows = hm.rows() / factor;
  const int out_cols = hm.cols() / factor;

  auto sample = [&](int r, int c) {
    const std::int32_t v = hm.at(r, c);
    if (v == hm.nodata) {
      throw VoidDataError("downsample support contains nodata at (" + std::to_string(r) + "," +
                          std::to_string(c) + ")");
    }
    return static_cast<double>(v);
  };

  Grid<std::int32_t> out(out_rows, out_cols);
  for (int i = 0; i < out_rows; ++i) {
    for (int j = 0; j < out_cols; ++j) {
      const double sr = std::clamp((i + 0.5) * factor - 0.5, 0.0, hm.rows() - 1.0);
      const double sc = std::clamp((j + 0.5) * factor - 0.5, 0.0, hm.cols() - 1.0);
      const int r0 = static_cast<int>(sr);
      const int c0 = static_cast<int>(sc);
      const int r1 = std::min(r0 + 1, hm.rows() - 1);
      const int c1 = std::min(c0 + 1, hm.cols() - 1);
      const double fr = sr - r0;
      const double fc = sc - c0;

      double acc = 0.0;
      // Skip zero-weight corners so voids outside the true support stay legal.
      if ((1 - fr) * (1 - fc) > 0) acc += (1 - fr) * (1 - fc) * sample(r0, c0);
      if ((1 - fr) * fc > 0) acc += (1 - fr) * fc * sample(r0, c1);
      if (fr * (1 - fc) > 0) acc += fr * (1 - fc) * sample(r1, c0);
      if (fr * fc > 0) acc += fr * fc * sample(r1, c1);
      out(i, j) = static_cast<std::int32_t>(std::llround(acc));
    }
  }
  return HeightMap{std::move(out), hm.nodata};
}

}  // namespace wfct
