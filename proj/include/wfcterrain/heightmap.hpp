#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "wfcterrain/grid.hpp"

namespace wfct {

inline constexpr std::int32_t kDefaultNodata = -32768;

/// Elevation grid in integer meters above sea level. Row 0 is the
/// northern edge; cells equal to `nodata` are voids.
struct HeightMap {
  Grid<std::int32_t> cells;
  std::int32_t nodata = kDefaultNodata;

  int rows() const { return cells.rows(); }
  int cols() const { return cells.cols(); }

  std::int32_t at(int r, int c) const { return cells(r, c); }
  bool is_void(int r, int c) const { return cells(r, c) == nodata; }

  int void_count() const {
    return static_cast<int>(std::count(cells.begin(), cells.end(), nodata));
  }

  friend bool operator==(const HeightMap&, const HeightMap&) = default;
};

inline HeightMap make_heightmap(int rows, int cols, std::vector<std::int32_t> values,
                                std::int32_t nodata = kDefaultNodata) {
  if (rows < 1 || cols < 1) throw RangeError("heightmap needs at least one row and column");
  return HeightMap{Grid<std::int32_t>::from_cells(rows, cols, std::move(values)), nodata};
}

/// SRTM tile identifier; degrees of the tile's southwest corner.
/// Renders to the "N26E057" naming scheme (S/W for negative degrees).
struct TileId {
  int northing = 0;
  int easting = 0;

  std::string to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c%02d%c%03d", northing < 0 ? 'S' : 'N', std::abs(northing),
                  easting < 0 ? 'W' : 'E', std::abs(easting));
    return buf;
  }

  static TileId parse(std::string_view name) {
    auto fail = [&] { throw ParseError("invalid tile name: " + std::string(name)); };
    if (name.size() != 7) fail();
    const char ns = static_cast<char>(std::toupper(name[0]));
    const char ew = static_cast<char>(std::toupper(name[3]));
    if ((ns != 'N' && ns != 'S') || (ew != 'E' && ew != 'W')) fail();
    for (std::size_t i : {1u, 2u, 4u, 5u, 6u}) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) fail();
    }
    const int lat = (name[1] - '0') * 10 + (name[2] - '0');
    const int lon = (name[4] - '0') * 100 + (name[5] - '0') * 10 + (name[6] - '0');
    return TileId{ns == 'S' ? -lat : lat, ew == 'W' ? -lon : lon};
  }

  friend bool operator==(const TileId&, const TileId&) = default;
};

}  // namespace wfct
