#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfcterrain/error.hpp"
#include "wfcterrain/gradient.hpp"
#include "wfcterrain/heightmap.hpp"

namespace wfct {

struct CurlResidualReport {
  std::int64_t max_abs_residual = 0;
  std::int64_t violation_count = 0;
  int residual_rows = 0;
  int residual_cols = 0;

  bool integrable() const { return max_abs_residual == 0; }
};

namespace detail {

// Gradient accessors that see the boundary strips, when present, as one
// extra gx row / gy column. Integration and the curl check then treat
// completed and bare fields uniformly.
inline std::int64_t gx_at(const GradientField& gf, int y, int x) {
  return y < gf.rows() ? gf.gx(y, x) : gf.gx_bottom[static_cast<std::size_t>(x)];
}

inline std::int64_t gy_at(const GradientField& gf, int y, int x) {
  return x < gf.cols() ? gf.gy(y, x) : gf.gy_right[static_cast<std::size_t>(y)];
}

}  // namespace detail

/// Discrete integrability check: around every unit square, the two ways
/// of summing gradients (right-then-down vs down-then-right) must agree.
/// With boundary strips present the squares along the bottom and right
/// edges are checked too.
inline CurlResidualReport curl_residual(const GradientField& gf) {
  if (gf.gx.empty()) throw RangeError("curl_residual: empty gradient field");
  CurlResidualReport report;
  report.residual_rows = gf.has_completion() ? gf.rows() : gf.rows() - 1;
  report.residual_cols = gf.has_completion() ? gf.cols() : gf.cols() - 1;
  for (int y = 0; y < report.residual_rows; ++y) {
    for (int x = 0; x < report.residual_cols; ++x) {
      const std::int64_t r = (detail::gx_at(gf, y, x) + detail::gy_at(gf, y, x + 1)) -
                             (detail::gy_at(gf, y, x) + detail::gx_at(gf, y + 1, x));
      if (r != 0) {
        ++report.violation_count;
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
      }
    }
  }
  return report;
}

/// Sums an R x C gradient field into an (R+1) x (C+1) heightmap with
/// H[0][0] = base_height. The field must be exactly integrable; heights
/// are accumulated row-first and independently column-first, and the two
/// orders are compared cell by cell — under zero curl they agree exactly.
///
/// Along the bottom row and right column the interior gradients run out;
/// the boundary strips supply those steps when present. Otherwise the
/// bottom-right corner is the one cell no gradient reaches, and it is
/// filled with the unique value that keeps the final unit square
/// curl-free: H[R][C] = H[R][C-1] + H[R-1][C] - H[R-1][C-1].
inline HeightMap integrate(const GradientField& gf, std::int32_t base_height) {
  const CurlResidualReport report = curl_residual(gf);
  if (!report.integrable()) {
    throw IntegrabilityError(
        "gradient field is not integrable: " + std::to_string(report.violation_count) +
            " unit squares disagree, worst by " + std::to_string(report.max_abs_residual),
        report.max_abs_residual, report.violation_count);
  }

  const int rows = gf.rows();
  const int cols = gf.cols();
  const bool completed = gf.has_completion();
  const std::size_t out_cells = static_cast<std::size_t>(rows + 1) * (cols + 1);
  auto at = [cols](std::vector<std::int64_t>& h, int y, int x) -> std::int64_t& {
    return h[static_cast<std::size_t>(y) * (cols + 1) + x];
  };

  // Row-first: top row by gx, then each row from the one above by gy.
  std::vector<std::int64_t> row_first(out_cells, 0);
  at(row_first, 0, 0) = base_height;
  for (int x = 0; x < cols; ++x) {
    at(row_first, 0, x + 1) = at(row_first, 0, x) + gf.gx(0, x);
  }
  for (int y = 1; y <= rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      at(row_first, y, x) = at(row_first, y - 1, x) + gf.gy(y - 1, x);
    }
    if (completed) {
      at(row_first, y, cols) = at(row_first, y - 1, cols) + detail::gy_at(gf, y - 1, cols);
    } else if (y < rows) {
      at(row_first, y, cols) = at(row_first, y, cols - 1) + gf.gx(y, cols - 1);
    } else {
      at(row_first, y, cols) =
          at(row_first, y, cols - 1) + at(row_first, y - 1, cols) - at(row_first, y - 1, cols - 1);
    }
  }

  // Column-first: left column by gy, then each column from its left
  // neighbor by gx.
  std::vector<std::int64_t> col_first(out_cells, 0);
  at(col_first, 0, 0) = base_height;
  for (int y = 0; y < rows; ++y) {
    at(col_first, y + 1, 0) = at(col_first, y, 0) + gf.gy(y, 0);
  }
  for (int x = 1; x <= cols; ++x) {
    for (int y = 0; y < rows; ++y) {
      at(col_first, y, x) = at(col_first, y, x - 1) + gf.gx(y, x - 1);
    }
    if (completed) {
      at(col_first, rows, x) = at(col_first, rows, x - 1) + detail::gx_at(gf, rows, x - 1);
    } else if (x < cols) {
      at(col_first, rows, x) = at(col_first, rows - 1, x) + gf.gy(rows - 1, x);
    } else {
      at(col_first, rows, x) =
          at(col_first, rows, x - 1) + at(col_first, rows - 1, x) - at(col_first, rows - 1, x - 1);
    }
  }

  if (row_first != col_first) {
    throw std::logic_error("integrate: row-first and column-first sums disagree on a curl-free field");
  }

  std::vector<std::int32_t> cells;
  cells.reserve(out_cells);
  for (std::int64_t h : row_first) {
    if (h < std::numeric_limits<std::int32_t>::min() ||
        h > std::numeric_limits<std::int32_t>::max()) {
      throw RangeError("integrate: accumulated height exceeds the 32-bit cell range");
    }
    cells.push_back(static_cast<std::int32_t>(h));
  }
  return make_heightmap(rows + 1, cols + 1, cells);
}

/// Median height of a reference map, for anchoring reconstructions at a
/// plausible absolute elevation. Lower median for even counts, so the
/// result is always an actual sample value (and stays integral).
inline std::int32_t base_from_reference(const HeightMap& hm) {
  std::vector<std::int32_t> values;
  values.reserve(static_cast<std::size_t>(hm.rows()) * hm.cols());
  for (std::int32_t v : hm.cells.cells()) {
    if (v != hm.nodata) values.push_back(v);
  }
  if (values.empty()) throw VoidDataError("reference heightmap has no valid cells");
  const std::size_t k = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + k, values.end());
  return values[k];
}

}  // namespace wfct
