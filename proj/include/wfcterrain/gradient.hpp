#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wfcterrain/ascii_grid.hpp"
#include "wfcterrain/heightmap.hpp"

namespace wfct {

/// Forward-difference slope field of a heightmap, integer meters per
/// pixel. gx[y][x] = H[y][x+1] - H[y][x] (column/east direction),
/// gy[y][x] = H[y+1][x] - H[y][x] (row/south direction). Both channels
/// share the co-registered (rows-1) x (cols-1) crop of their source.
///
/// The crop discards one strip per channel: gx over the source's last
/// row and gy over its last column. Fields derived from a heightmap
/// keep those strips (`gx_bottom`, `gy_right`) so integration can
/// rebuild the source exactly; fields decoded from the solver or read
/// from disk have no strips and leave one corner to the integrator's
/// curl-free fill.
struct GradientField {
  Grid<std::int32_t> gx;
  Grid<std::int32_t> gy;
  std::vector<std::int32_t> gx_bottom;  // size cols() when present, else empty
  std::vector<std::int32_t> gy_right;   // size rows() when present, else empty

  int rows() const { return gx.rows(); }
  int cols() const { return gx.cols(); }
  bool has_completion() const { return !gx_bottom.empty() && !gy_right.empty(); }

  friend bool operator==(const GradientField&, const GradientField&) = default;
};

inline GradientField make_field(Grid<std::int32_t> gx, Grid<std::int32_t> gy) {
  if (gx.rows() != gy.rows() || gx.cols() != gy.cols()) {
    throw RangeError("gradient channels must have identical dimensions");
  }
  return GradientField{std::move(gx), std::move(gy), {}, {}};
}

/// Dimension-preserving heightmap reindexings used to widen the
/// training set. rotate-180 == horizontal-flip composed with
/// vertical-flip.
enum class Transform { kIdentity, kHFlip, kVFlip, kRot180 };

inline constexpr Transform kDefaultTransforms[] = {Transform::kIdentity, Transform::kHFlip,
                                                   Transform::kVFlip, Transform::kRot180};

inline Transform parse_transform(std::string_view name) {
  if (name == "identity") return Transform::kIdentity;
  if (name == "hflip") return Transform::kHFlip;
  if (name == "vflip") return Transform::kVFlip;
  if (name == "rot180") return Transform::kRot180;
  throw ParseError("unknown transform: " + std::string(name));
}

inline std::string_view transform_name(Transform t) {
  switch (t) {
    case Transform::kIdentity: return "identity";
    case Transform::kHFlip: return "hflip";
    case Transform::kVFlip: return "vflip";
    case Transform::kRot180: return "rot180";
  }
  return "?";
}

inline HeightMap transform_heightmap(const HeightMap& hm, Transform t) {
  const int rows = hm.rows();
  const int cols = hm.cols();
  Grid<std::int32_t> out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int sr = r, sc = c;
      switch (t) {
        case Transform::kIdentity: break;
        case Transform::kHFlip: sc = cols - 1 - c; break;
        case Transform::kVFlip: sr = rows - 1 - r; break;
        case Transform::kRot180:
          sr = rows - 1 - r;
          sc = cols - 1 - c;
          break;
      }
      out(r, c) = hm.at(sr, sc);
    }
  }
  return HeightMap{std::move(out), hm.nodata};
}

/// Forward differences of a void-free heightmap with rows, cols >= 2.
inline GradientField compute_gradients(const HeightMap& hm) {
  const int rows = hm.rows();
  const int cols = hm.cols();
  if (rows < 2 || cols < 2) {
    throw RangeError("gradients need at least a 2x2 heightmap, got " + std::to_string(rows) +
                     "x" + std::to_string(cols));
  }
  GradientField f;
  f.gx = Grid<std::int32_t>(rows - 1, cols - 1);
  f.gy = Grid<std::int32_t>(rows - 1, cols - 1);
  auto at = [&](int r, int c) {
    const std::int32_t v = hm.at(r, c);
    if (v == hm.nodata) {
      throw VoidDataError("heightmap has nodata at (" + std::to_string(r) + "," +
                          std::to_string(c) + ")");
    }
    return v;
  };
  for (int y = 0; y < rows - 1; ++y) {
    for (int x = 0; x < cols - 1; ++x) {
      f.gx(y, x) = at(y, x + 1) - at(y, x);
      f.gy(y, x) = at(y + 1, x) - at(y, x);
    }
  }
  f.gx_bottom.resize(cols - 1);
  for (int x = 0; x < cols - 1; ++x) f.gx_bottom[x] = at(rows - 1, x + 1) - at(rows - 1, x);
  f.gy_right.resize(rows - 1);
  for (int y = 0; y < rows - 1; ++y) f.gy_right[y] = at(y + 1, cols - 1) - at(y, cols - 1);
  return f;
}

/// One gradient field per transform, each computed from the transformed
/// heightmap (transforming gradients directly would invert slope signs).
inline std::vector<GradientField> training_set(
    const HeightMap& hm, std::span<const Transform> transforms = kDefaultTransforms) {
  std::vector<GradientField> fields;
  fields.reserve(transforms.size());
  for (Transform t : transforms) {
    fields.push_back(compute_gradients(transform_heightmap(hm, t)));
  }
  return fields;
}

/// Serialized channel pair for the `<name>.gx.asc` / `<name>.gy.asc` layout.
inline std::pair<std::string, std::string> field_to_ascii(const GradientField& f,
                                                          const GridMeta& meta = {}) {
  return {write_ascii_grid(f.gx, kDefaultNodata, meta),
          write_ascii_grid(f.gy, kDefaultNodata, meta)};
}

inline GradientField field_from_ascii(std::string_view gx_text, std::string_view gy_text) {
  auto gx = read_ascii_grid(gx_text);
  auto gy = read_ascii_grid(gy_text);
  return make_field(std::move(gx.grid), std::move(gy.grid));
}

}  // namespace wfct
