#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wfcterrain/error.hpp"
#include "wfcterrain/gradient.hpp"
#include "wfcterrain/grid.hpp"

namespace wfct {

/// How a gradient field is flattened into slope samples: the Euclidean
/// norm per position (default), or |gx| and |gy| pooled as separate
/// samples. Both are defensible readings of "slope magnitude".
enum class MagnitudeMode { kEuclidean, kPooled };

inline MagnitudeMode parse_magnitude_mode(std::string_view name) {
  if (name == "euclidean") return MagnitudeMode::kEuclidean;
  if (name == "pooled") return MagnitudeMode::kPooled;
  throw ParseError("unknown magnitude mode '" + std::string(name) +
                   "' (expected euclidean or pooled)");
}

inline const char* magnitude_mode_name(MagnitudeMode mode) {
  return mode == MagnitudeMode::kEuclidean ? "euclidean" : "pooled";
}

struct SlopeSummary {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // population standard deviation
  std::size_t n = 0;
};

struct HistogramPair {
  std::vector<double> bin_edges;  // bins + 1 ascending values, shared
  std::vector<std::uint64_t> counts_in;
  std::vector<std::uint64_t> counts_out;
  double intersection_score = 0.0;  // in [0, 1]; 1 iff normalized bins match
};

struct ComparisonReport {
  SlopeSummary input;
  SlopeSummary output;
  HistogramPair histogram;
};

inline Grid<double> slope_magnitude(const GradientField& gf) {
  Grid<double> m(gf.rows(), gf.cols(), 0.0);
  for (int y = 0; y < gf.rows(); ++y) {
    for (int x = 0; x < gf.cols(); ++x) {
      m(y, x) = std::hypot(static_cast<double>(gf.gx(y, x)), static_cast<double>(gf.gy(y, x)));
    }
  }
  return m;
}

inline std::vector<double> slope_samples(const GradientField& gf, MagnitudeMode mode) {
  if (gf.gx.empty()) throw RangeError("slope_samples: empty gradient field");
  std::vector<double> samples;
  if (mode == MagnitudeMode::kEuclidean) {
    const Grid<double> m = slope_magnitude(gf);
    samples.assign(m.cells().begin(), m.cells().end());
  } else {
    samples.reserve(gf.gx.cells().size() * 2);
    for (std::int32_t v : gf.gx.cells()) samples.push_back(std::abs(static_cast<double>(v)));
    for (std::int32_t v : gf.gy.cells()) samples.push_back(std::abs(static_cast<double>(v)));
  }
  return samples;
}

inline SlopeSummary summarize(std::span<const double> values) {
  if (values.empty()) throw RangeError("summarize: empty value sequence");
  SlopeSummary s;
  s.n = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(s.n));
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = s.n / 2;
  s.median = (s.n % 2 == 1) ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  return s;
}

namespace detail {

inline std::vector<std::uint64_t> bin_counts(std::span<const double> values, double width,
                                             int bins) {
  std::vector<std::uint64_t> counts(bins, 0);
  for (double v : values) {
    int idx = width > 0.0 ? static_cast<int>(v / width) : 0;
    idx = std::clamp(idx, 0, bins - 1);  // samples at the top edge fall into the last bin
    ++counts[static_cast<std::size_t>(idx)];
  }
  return counts;
}

}  // namespace detail

/// Side-by-side distribution comparison of two slope sample sets over
/// shared uniform bins spanning [0, max of both sets]. The score is the
/// histogram intersection of the count-normalized bins.
inline ComparisonReport compare(const GradientField& input_gf, const GradientField& output_gf,
                                int bins = 50, MagnitudeMode mode = MagnitudeMode::kEuclidean) {
  if (bins < 1) throw RangeError("compare: bins must be at least 1");
  const std::vector<double> in = slope_samples(input_gf, mode);
  const std::vector<double> out = slope_samples(output_gf, mode);

  ComparisonReport report;
  report.input = summarize(in);
  report.output = summarize(out);

  double top = std::max(*std::max_element(in.begin(), in.end()),
                        *std::max_element(out.begin(), out.end()));
  // All-zero data has no natural span; any positive one keeps the edges
  // ascending and drops every sample into the first bin.
  if (top <= 0.0) top = 1.0;
  const double width = top / bins;

  HistogramPair& h = report.histogram;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.bin_edges[static_cast<std::size_t>(i)] = width * i;
  h.counts_in = detail::bin_counts(in, width, bins);
  h.counts_out = detail::bin_counts(out, width, bins);
  double score = 0.0;
  for (int i = 0; i < bins; ++i) {
    const double p_in = static_cast<double>(h.counts_in[static_cast<std::size_t>(i)]) /
                        static_cast<double>(report.input.n);
    const double p_out = static_cast<double>(h.counts_out[static_cast<std::size_t>(i)]) /
                         static_cast<double>(report.output.n);
    score += std::min(p_in, p_out);
  }
  h.intersection_score = score;
  return report;
}

/// Two-column (bin center, normalized count) dump, one gnuplot data
/// block per series: index 0 is the input histogram, index 1 the output.
inline std::string gnuplot_histogram(const HistogramPair& h, std::size_t n_in,
                                     std::size_t n_out) {
  std::string out;
  auto emit = [&](const char* title, const std::vector<std::uint64_t>& counts, std::size_t n) {
    out += std::string("# ") + title + "\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double center = (h.bin_edges[i] + h.bin_edges[i + 1]) / 2.0;
      const double p = n > 0 ? static_cast<double>(counts[i]) / static_cast<double>(n) : 0.0;
      char line[64];
      std::snprintf(line, sizeof(line), "%.9g %.9g\n", center, p);
      out += line;
    }
  };
  emit("input", h.counts_in, n_in);
  out += "\n\n";
  emit("output", h.counts_out, n_out);
  return out;
}

}  // namespace wfct
