#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "wfcterrain/gradient.hpp"
#include "wfcterrain/report_json.hpp"
#include "wfcterrain/stats.hpp"

using namespace wfct;
using Catch::Matchers::WithinAbs;

namespace {

GradientField field_1xN(std::vector<std::int32_t> gx, std::vector<std::int32_t> gy) {
  const int cols = static_cast<int>(gx.size());
  return make_field(Grid<std::int32_t>::from_cells(1, cols, std::move(gx)),
                    Grid<std::int32_t>::from_cells(1, cols, std::move(gy)));
}

GradientField random_field(std::mt19937_64& rng, int rows, int cols, int scale = 1) {
  Grid<std::int32_t> gx(rows, cols, 0);
  Grid<std::int32_t> gy(rows, cols, 0);
  for (auto& v : gx) v = (static_cast<std::int32_t>(rng() % 21) - 10) * scale;
  for (auto& v : gy) v = (static_cast<std::int32_t>(rng() % 21) - 10) * scale;
  return make_field(std::move(gx), std::move(gy));
}

}  // namespace

TEST_CASE("slope magnitude is the per-cell euclidean norm") {
  const Grid<double> m = slope_magnitude(field_1xN({3, -3, 0}, {4, 4, 0}));
  CHECK(m(0, 0) == 5.0);
  CHECK(m(0, 1) == 5.0);
  CHECK(m(0, 2) == 0.0);
}

TEST_CASE("pooled sampling lists absolute gx then gy components") {
  const std::vector<double> s = slope_samples(field_1xN({3, -1}, {-4, 2}), MagnitudeMode::kPooled);
  CHECK(s == std::vector<double>{3, 1, 4, 2});
}

TEST_CASE("magnitude mode names round-trip and bad names are rejected") {
  CHECK(parse_magnitude_mode("euclidean") == MagnitudeMode::kEuclidean);
  CHECK(parse_magnitude_mode("pooled") == MagnitudeMode::kPooled);
  CHECK(std::string(magnitude_mode_name(MagnitudeMode::kPooled)) == "pooled");
  CHECK_THROWS_AS(parse_magnitude_mode("manhattan"), ParseError);
}

TEST_CASE("summary statistics on tiny sequences") {
  const std::vector<double> single{5.0};
  const SlopeSummary a = summarize(single);
  CHECK(a.mean == 5.0);
  CHECK(a.median == 5.0);
  CHECK(a.stddev == 0.0);
  CHECK(a.n == 1);

  const std::vector<double> odd{3.0, 1.0, 2.0};
  const SlopeSummary b = summarize(odd);
  CHECK_THAT(b.mean, WithinAbs(2.0, 1e-12));
  CHECK(b.median == 2.0);
  CHECK_THAT(b.stddev, WithinAbs(0.816496580927726, 1e-12));  // population, not sample

  const std::vector<double> even{4.0, 1.0, 3.0, 2.0};
  CHECK(summarize(even).median == 2.5);

  CHECK_THROWS_AS(summarize(std::vector<double>{}), RangeError);
}

TEST_CASE("identical distributions score a full intersection") {
  std::mt19937_64 rng(10);
  const GradientField gf = random_field(rng, 6, 6);
  const ComparisonReport report = compare(gf, gf);
  CHECK(report.histogram.intersection_score == 1.0);
  CHECK(report.input.n == 36);
  CHECK(report.histogram.bin_edges.size() == 51);
  CHECK(report.histogram.bin_edges.front() == 0.0);
}

TEST_CASE("disjoint distributions score zero") {
  const GradientField flat = field_1xN({0, 0, 0}, {0, 0, 0});
  const GradientField steep = field_1xN({10, 10, 10}, {0, 0, 0});
  const ComparisonReport report = compare(flat, steep);
  CHECK(report.histogram.intersection_score == 0.0);
  CHECK(report.histogram.bin_edges.back() == 10.0);  // span covers the larger set
}

TEST_CASE("the intersection score is symmetric in its arguments") {
  std::mt19937_64 rng(11);
  const GradientField a = random_field(rng, 5, 7);
  const GradientField b = random_field(rng, 8, 4);
  CHECK(compare(a, b).histogram.intersection_score == compare(b, a).histogram.intersection_score);
}

TEST_CASE("uniformly scaling both fields leaves the score unchanged") {
  // Seven bins over a span of at most 10 keep every nonzero sample away
  // from interior bin edges, so the comparison survives the rounding
  // differences between width and 7*width.
  std::mt19937_64 rng(12);
  GradientField a1(random_field(rng, 6, 6));
  std::mt19937_64 rng2(12);
  GradientField a7(random_field(rng2, 6, 6, 7));
  std::mt19937_64 rng3(13);
  GradientField b1(random_field(rng3, 6, 6));
  std::mt19937_64 rng4(13);
  GradientField b7(random_field(rng4, 6, 6, 7));

  const double pooled1 = compare(a1, b1, 7, MagnitudeMode::kPooled).histogram.intersection_score;
  const double pooled7 = compare(a7, b7, 7, MagnitudeMode::kPooled).histogram.intersection_score;
  CHECK(pooled1 == pooled7);

  const double euc1 = compare(a1, b1, 7).histogram.intersection_score;
  const double euc7 = compare(a7, b7, 7).histogram.intersection_score;
  CHECK_THAT(euc7, WithinAbs(euc1, 1e-12));
}

TEST_CASE("all-zero slopes on both sides still compare cleanly") {
  const GradientField zero = field_1xN({0, 0}, {0, 0});
  const ComparisonReport report = compare(zero, zero);
  CHECK(report.histogram.intersection_score == 1.0);
  CHECK(report.histogram.bin_edges.back() == 1.0);  // placeholder span
}

TEST_CASE("a non-positive bin count is rejected") {
  const GradientField gf = field_1xN({1}, {2});
  CHECK_THROWS_AS(compare(gf, gf, 0), RangeError);
  CHECK_THROWS_AS(compare(gf, gf, -3), RangeError);
}

TEST_CASE("gnuplot dump emits two indexed blocks of centers and rates") {
  const GradientField zero = field_1xN({0}, {0});
  const ComparisonReport report = compare(zero, zero, 2);
  const std::string text =
      gnuplot_histogram(report.histogram, report.input.n, report.output.n);
  CHECK(text ==
        "# input\n"
        "0.25 1\n"
        "0.75 0\n"
        "\n\n"
        "# output\n"
        "0.25 1\n"
        "0.75 0\n");
}

TEST_CASE("comparison reports serialize with stable key names") {
  std::mt19937_64 rng(14);
  const GradientField a = random_field(rng, 4, 4);
  const GradientField b = random_field(rng, 4, 4);
  const ComparisonReport report = compare(a, b, 10);
  const nlohmann::json j = report_to_json(report);
  for (const char* key : {"mean_in", "mean_out", "median_in", "median_out", "std_in", "std_out",
                          "n_in", "n_out", "bin_edges", "counts_in", "counts_out",
                          "intersection_score"}) {
    INFO(key);
    CHECK(j.contains(key));
  }
  CHECK(j["n_in"] == 16);
  CHECK(j["bin_edges"].size() == 11);
  CHECK(j["intersection_score"] == report.histogram.intersection_score);
}
