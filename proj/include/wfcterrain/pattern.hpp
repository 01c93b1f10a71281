#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wfcterrain/gradient.hpp"

namespace wfct {

using PatternId = std::uint32_t;

enum class Direction : int { kRight = 0, kDown = 1, kLeft = 2, kUp = 3 };

inline constexpr Direction kAllDirections[] = {Direction::kRight, Direction::kDown,
                                               Direction::kLeft, Direction::kUp};

inline constexpr Direction opposite(Direction d) {
  switch (d) {
    case Direction::kRight: return Direction::kLeft;
    case Direction::kDown: return Direction::kUp;
    case Direction::kLeft: return Direction::kRight;
    case Direction::kUp: return Direction::kDown;
  }
  return Direction::kRight;
}

/// 2x2x2 slope tile: a 2x2 spatial window over both gradient channels.
/// Component order is gx00 gx01 gx10 gx11 gy00 gy01 gy10 gy11 with the
/// first digit the row and the second the column.
struct Pattern {
  std::array<std::int32_t, 8> cells{};
  std::uint64_t frequency = 1;

  std::int32_t gx(int r, int c) const { return cells[static_cast<std::size_t>(2 * r + c)]; }
  std::int32_t gy(int r, int c) const { return cells[static_cast<std::size_t>(4 + 2 * r + c)]; }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Deduplicated patterns in canonical (lexicographic-by-components)
/// order, so identical training data always yields identical ids.
struct PatternCatalog {
  static constexpr int kPatternSize = 2;
  static constexpr int kChannels = 2;

  std::vector<Pattern> patterns;

  std::size_t size() const { return patterns.size(); }
  const Pattern& at(PatternId id) const { return patterns[id]; }
};

/// Boundary strip of a pattern on one side, both channels. Two patterns
/// may sit next to each other exactly when the facing strips are equal.
inline std::array<std::int32_t, 4> boundary_key(const Pattern& p, Direction side) {
  switch (side) {
    case Direction::kRight: return {p.gx(0, 1), p.gx(1, 1), p.gy(0, 1), p.gy(1, 1)};
    case Direction::kLeft: return {p.gx(0, 0), p.gx(1, 0), p.gy(0, 0), p.gy(1, 0)};
    case Direction::kDown: return {p.gx(1, 0), p.gx(1, 1), p.gy(1, 0), p.gy(1, 1)};
    case Direction::kUp: return {p.gx(0, 0), p.gx(0, 1), p.gy(0, 0), p.gy(0, 1)};
  }
  return {};
}

/// True when b may sit in direction d of a: the overlapping row or
/// column must match on both channels (4 integer equalities).
inline bool overlap_compatible(const Pattern& a, const Pattern& b, Direction d) {
  return boundary_key(a, d) == boundary_key(b, opposite(d));
}

/// Slide a 2x2 window over every field (non-periodic, row-major),
/// merging duplicates by frequency. Each field of dims R x C
/// contributes (R-1)*(C-1) window draws.
inline PatternCatalog extract_patterns(std::span<const GradientField> fields) {
  std::map<std::array<std::int32_t, 8>, std::uint64_t> counts;
  for (const GradientField& f : fields) {
    if (f.rows() < 2 || f.cols() < 2) {
      throw RangeError("field smaller than the 2x2 pattern window: " + std::to_string(f.rows()) +
                       "x" + std::to_string(f.cols()));
    }
    for (int y = 0; y + 1 < f.rows(); ++y) {
      for (int x = 0; x + 1 < f.cols(); ++x) {
        std::array<std::int32_t, 8> cells = {f.gx(y, x),     f.gx(y, x + 1),
                                             f.gx(y + 1, x), f.gx(y + 1, x + 1),
                                             f.gy(y, x),     f.gy(y, x + 1),
                                             f.gy(y + 1, x), f.gy(y + 1, x + 1)};
        ++counts[cells];
      }
    }
  }
  PatternCatalog catalog;
  catalog.patterns.reserve(counts.size());
  for (const auto& [cells, freq] : counts) {
    catalog.patterns.push_back(Pattern{cells, freq});
  }
  return catalog;
}

}  // namespace wfct
