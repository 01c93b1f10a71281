#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wfcterrain/heightmap.hpp"

namespace wfct {

/// Georeferencing carried through the ESRI ASCII grid header.
struct GridMeta {
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;

  friend bool operator==(const GridMeta&, const GridMeta&) = default;
};

struct AsciiGrid {
  Grid<std::int32_t> grid;
  std::int32_t nodata = kDefaultNodata;
  GridMeta meta;

  HeightMap to_heightmap() const { return HeightMap{grid, nodata}; }
};

namespace detail {

// Shortest representation that parses back to exactly the same double,
// so georeferencing survives any number of write/read cycles.
inline std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::int32_t parse_int32(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  if (pos != tok.size() || v < INT32_MIN || v > INT32_MAX) {
    throw ParseError(std::string("expected 32-bit integer ") + what + ", got '" + tok + "'");
  }
  return static_cast<std::int32_t>(v);
}

inline double parse_double(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected number ") + what + ", got '" + tok + "'");
  }
  if (pos != tok.size()) {
    throw ParseError(std::string("expected number ") + what + ", got '" + tok + "'");
  }
  return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace detail

/// Serialize a grid in ESRI ASCII grid format, one grid row per line.
inline std::string write_ascii_grid(const Grid<std::int32_t>& g,
                                    std::int32_t nodata = kDefaultNodata,
                                    const GridMeta& meta = {}) {
  if (g.empty()) throw RangeError("cannot write an empty grid");
  std::ostringstream out;
  out << "ncols " << g.cols() << '\n';
  out << "nrows " << g.rows() << '\n';
  out << "xllcorner " << detail::format_double(meta.xllcorner) << '\n';
  out << "yllcorner " << detail::format_double(meta.yllcorner) << '\n';
  out << "cellsize " << detail::format_double(meta.cellsize) << '\n';
  out << "NODATA_value " << nodata << '\n';
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      if (c) out << ' ';
      out << g(r, c);
    }
    out << '\n';
  }
  return out.str();
}

inline std::string write_ascii_grid(const HeightMap& hm, const GridMeta& meta = {}) {
  return write_ascii_grid(hm.cells, hm.nodata, meta);
}

/// Parse an ESRI ASCII grid. `ncols` and `nrows` are mandatory; the
/// remaining header keys default to (0, 0, 1, -32768). Every data line
/// must hold exactly ncols integers.
inline AsciiGrid read_ascii_grid(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;

  int ncols = -1, nrows = -1;
  AsciiGrid result;

  // Header: "<key> <value>" lines until the first line starting with a number.
  std::vector<std::string> pending;
  while (std::getline(in, line)) {
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const char c0 = toks[0][0];
    if (c0 == '-' || c0 == '+' || (c0 >= '0' && c0 <= '9')) {
      pending = std::move(toks);
      break;
    }
    if (toks.size() != 2) throw ParseError("bad header line: '" + line + "'");
    std::string key = toks[0];
    for (char& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (key == "ncols") {
      ncols = detail::parse_int32(toks[1], "ncols");
    } else if (key == "nrows") {
      nrows = detail::parse_int32(toks[1], "nrows");
    } else if (key == "xllcorner") {
      result.meta.xllcorner = detail::parse_double(toks[1], "xllcorner");
    } else if (key == "yllcorner") {
      result.meta.yllcorner = detail::parse_double(toks[1], "yllcorner");
    } else if (key == "cellsize") {
      result.meta.cellsize = detail::parse_double(toks[1], "cellsize");
    } else if (key == "nodata_value") {
      result.nodata = detail::parse_int32(toks[1], "NODATA_value");
    } else {
      throw ParseError("unknown header key '" + toks[0] + "'");
    }
  }
  if (ncols < 1 || nrows < 1) throw ParseError("missing or invalid ncols/nrows header");

  std::vector<std::int32_t> cells;
  cells.reserve(static_cast<std::size_t>(nrows) * ncols);
  int row = 0;
  while (true) {
    std::vector<std::string> toks;
    if (!pending.empty()) {
      toks = std::move(pending);
      pending.clear();
    } else {
      if (!std::getline(in, line)) break;
      toks = detail::split_ws(line);
      if (toks.empty()) continue;
    }
    if (row >= nrows) throw ParseError("more data rows than nrows=" + std::to_string(nrows));
    if (static_cast<int>(toks.size()) != ncols) {
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(toks.size()) +
                       " values, expected ncols=" + std::to_string(ncols));
    }
    for (const auto& t : toks) cells.push_back(detail::parse_int32(t, "cell"));
    ++row;
  }
  if (row != nrows) {
    throw ParseError("found " + std::to_string(row) + " data rows, expected nrows=" +
                     std::to_string(nrows));
  }
  result.grid = Grid<std::int32_t>::from_cells(nrows, ncols, std::move(cells));
  return result;
}

}  // namespace wfct
