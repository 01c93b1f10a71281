#pragma once

// Kept out of stats.hpp so library users who never serialize reports do
// not pull in the JSON dependency.

#include <json.hpp>

#include "wfcterrain/stats.hpp"

namespace wfct {

inline nlohmann::json report_to_json(const ComparisonReport& report) {
  return nlohmann::json{
      {"mean_in", report.input.mean},
      {"mean_out", report.output.mean},
      {"median_in", report.input.median},
      {"median_out", report.output.median},
      {"std_in", report.input.stddev},
      {"std_out", report.output.stddev},
      {"n_in", report.input.n},
      {"n_out", report.output.n},
      {"bin_edges", report.histogram.bin_edges},
      {"counts_in", report.histogram.counts_in},
      {"counts_out", report.histogram.counts_out},
      {"intersection_score", report.histogram.intersection_score},
  };
}

}  // namespace wfct
