#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "wfcterrain/error.hpp"

namespace wfct {

/// Dense row-major 2D container. Rows index south, columns index east.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(int rows, int cols, T fill = T{}) : rows_(rows), cols_(cols) {
    check_dims(rows, cols);
    cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
  }

  static Grid from_cells(int rows, int cols, std::vector<T> cells) {
    check_dims(rows, cols);
    if (cells.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
      throw RangeError("grid cell count does not match dimensions");
    }
    Grid g;
    g.rows_ = rows;
    g.cols_ = cols;
    g.cells_ = std::move(cells);
    return g;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return cells_.empty(); }

  bool in_bounds(int r, int c) const { return r >= 0 && r < rows_ && c >= 0 && c < cols_; }

  T& operator()(int r, int c) {
    assert(in_bounds(r, c));
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(in_bounds(r, c));
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const std::vector<T>& cells() const { return cells_; }
  std::vector<T>& cells() { return cells_; }

  auto begin() { return cells_.begin(); }
  auto end() { return cells_.end(); }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static void check_dims(int rows, int cols) {
    if (rows < 0 || cols < 0) throw RangeError("grid dimensions must be non-negative");
    if ((rows == 0) != (cols == 0)) throw RangeError("grid cannot have exactly one zero dimension");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> cells_;
};

}  // namespace wfct
