// Acceptance gate for the terrain synthesis pipeline. Each criterion
// prints exactly one PASS/FAIL line; the exit code is the number of
// failures. Criteria are independent: an exception in one is recorded
// as its failure and the rest still run.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "wfcterrain/wfcterrain.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f s", s);
  return buf;
}

wfct::HeightMap random_heightmap(std::mt19937_64& rng, int rows, int cols) {
  std::vector<std::int32_t> cells(static_cast<std::size_t>(rows) * cols);
  for (auto& v : cells) v = static_cast<std::int32_t>(wfct::uniform_below(rng, 9501)) - 500;
  return wfct::make_heightmap(rows, cols, std::move(cells));
}

wfct::Model model_from(const wfct::HeightMap& hm,
                       std::span<const wfct::Transform> transforms = wfct::kDefaultTransforms) {
  const std::vector<wfct::GradientField> fields = wfct::training_set(hm, transforms);
  return wfct::build_model(wfct::extract_patterns(fields));
}

// --- subprocess harness for the CLI-driven criteria -----------------

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RunResult run_cli(const fs::path& dir, const std::string& args) {
  const fs::path out_file = dir / "__stdout.txt";
  const fs::path err_file = dir / "__stderr.txt";
  const std::string cmd = "cd '" + dir.string() + "' && WFC_TERRAIN_LOG=error '" + WFCT_CLI_PATH +
                          "' " + args + " > '" + out_file.string() + "' 2> '" +
                          err_file.string() + "'";
  const int raw = std::system(cmd.c_str());
  return RunResult{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out_file), slurp(err_file)};
}

// --- criteria --------------------------------------------------------

// Differentiate-then-integrate must reproduce arbitrary terrain bit for
// bit, across 100 random sizes from 2x2 up to 64x64, within 5 seconds.
bool check_round_trip(std::string& detail) {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const int rows = 2 + static_cast<int>(wfct::uniform_below(rng, 63));
    const int cols = 2 + static_cast<int>(wfct::uniform_below(rng, 63));
    const wfct::HeightMap hm = random_heightmap(rng, rows, cols);
    if (wfct::integrate(wfct::compute_gradients(hm), hm.at(0, 0)) != hm) {
      detail = "mismatch on a " + std::to_string(rows) + "x" + std::to_string(cols) + " map";
      return false;
    }
  }
  const double elapsed = seconds_since(start);
  detail = "100 maps in " + fmt_secs(elapsed);
  return elapsed < 5.0;
}

// Every field the solver emits must pass the curl check and integrate;
// integrate() itself certifies that row-first and column-first sums
// agree exactly. 50 seeds within 60 seconds.
bool check_generated_integrable(std::string& detail) {
  const auto start = Clock::now();
  const wfct::Model model = model_from(wfct::synthetic_terrain(wfct::SyntheticKind::kSine, 40, 40));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    wfct::GenerateOptions opt;
    opt.rows = 20;
    opt.cols = 20;
    opt.seed = seed;
    const wfct::GenerateResult result = wfct::generate(model, opt);
    if (!wfct::curl_residual(result.field).integrable()) {
      detail = "seed " + std::to_string(seed) + " produced curl";
      return false;
    }
    wfct::integrate(result.field, 0);  // throws on any inconsistency
  }
  const double elapsed = seconds_since(start);
  detail = "50 seeds, 21x21 fields, in " + fmt_secs(elapsed);
  return elapsed < 60.0;
}

// Every aligned 2x2 window of a decoded output must be a pattern the
// model learned, at output sizes up to 33x33.
bool check_catalog_closure(std::string& detail) {
  const wfct::Model model = model_from(wfct::synthetic_terrain(wfct::SyntheticKind::kSine, 40, 40));
  const std::pair<int, int> cell_dims[] = {{4, 4}, {11, 8}, {32, 32}};
  std::size_t windows = 0;
  for (const auto& [rows, cols] : cell_dims) {
    for (std::uint64_t seed : {1, 2}) {
      wfct::GenerateOptions opt;
      opt.rows = rows;
      opt.cols = cols;
      opt.seed = seed;
      const wfct::GradientField field = wfct::generate(model, opt).field;
      std::vector<wfct::PatternId> tiling;
      if (!oracle::field_to_tiling(model.catalog, field, tiling)) {
        detail = "unknown window in a " + std::to_string(rows + 1) + "x" +
                 std::to_string(cols + 1) + " output, seed " + std::to_string(seed);
        return false;
      }
      windows += tiling.size();
    }
  }
  detail = std::to_string(windows) + " windows checked up to 33x33";
  return true;
}

// On an alphabet small enough to enumerate, 1000 solver outputs must all
// be members of the exhaustively enumerated tiling set; and the hash-join
// adjacency must equal all-pairs brute force on a few-hundred-pattern
// catalog. Both within 120 seconds.
bool check_small_alphabet(std::string& detail) {
  const auto start = Clock::now();

  // Two stacked ramp bands: three patterns, eight legal 3x3 tilings.
  std::vector<std::int32_t> cells;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) cells.push_back(c + (r >= 3 ? 1 : 0));
  }
  const wfct::Transform identity[] = {wfct::Transform::kIdentity};
  const wfct::Model model = model_from(wfct::make_heightmap(6, 6, cells), identity);
  if (model.catalog.size() > 6) {
    detail = "fixture alphabet grew to " + std::to_string(model.catalog.size()) + " patterns";
    return false;
  }
  const std::set<std::vector<wfct::PatternId>> valid =
      oracle::enumerate_tilings(model.catalog, 3, 3);

  int produced = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    wfct::GenerateOptions opt;
    opt.rows = 3;
    opt.cols = 3;
    opt.seed = seed;
    opt.max_restarts = 5;
    try {
      const wfct::GradientField field = wfct::generate(model, opt).field;
      std::vector<wfct::PatternId> tiling;
      if (!oracle::field_to_tiling(model.catalog, field, tiling) || !valid.count(tiling)) {
        detail = "seed " + std::to_string(seed) + " produced a tiling outside the valid set";
        return false;
      }
      ++produced;
    } catch (const wfct::GenerationFailure&) {
      // A contradiction is an acceptable outcome; an invalid tiling is not.
    }
  }
  if (produced == 0) {
    detail = "no seed produced an output";
    return false;
  }

  // Brute-force comparison on a catalog in the hundreds.
  const wfct::Model walk =
      model_from(wfct::synthetic_terrain(wfct::SyntheticKind::kRandomWalk, 12, 12, 3));
  if (walk.catalog.size() > 500) {
    detail = "comparison catalog grew to " + std::to_string(walk.catalog.size()) + " patterns";
    return false;
  }
  if (walk.rules.allowed != oracle::brute_force_adjacency(walk.catalog).allowed) {
    detail = "inferred adjacency disagrees with brute force";
    return false;
  }

  const double elapsed = seconds_since(start);
  detail = std::to_string(produced) + "/1000 seeds solved, " +
           std::to_string(valid.size()) + " valid tilings, " +
           std::to_string(walk.catalog.size()) + "-pattern brute-force match, in " +
           fmt_secs(elapsed);
  return elapsed < 120.0;
}

// Identical model, dimensions, seed, and restart budget must yield
// byte-identical output files; a raced run must report a winning attempt
// index whose pinned replay reproduces its files exactly.
bool check_determinism(std::string& detail) {
  const fs::path dir = fs::temp_directory_path() / ("wfct-acc-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Cleanup {
    const fs::path& p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{dir};

  if (run_cli(dir, "synth --kind sine --rows 24 --cols 24 --out in.asc").code != 0 ||
      run_cli(dir, "extract --in in.asc --out model.wfc").code != 0) {
    detail = "pipeline setup failed";
    return false;
  }
  if (run_cli(dir, "generate --model model.wfc --size 9x9 --seed 11 --out a").code != 0 ||
      run_cli(dir, "generate --model model.wfc --size 9x9 --seed 11 --out b").code != 0) {
    detail = "generation failed";
    return false;
  }
  if (slurp(dir / "a.gx.asc") != slurp(dir / "b.gx.asc") ||
      slurp(dir / "a.gy.asc") != slurp(dir / "b.gy.asc")) {
    detail = "same settings produced different files";
    return false;
  }

  const RunResult race = run_cli(
      dir, "generate --model model.wfc --size 9x9 --seed 17 --parallel-attempts 4 --out race");
  const std::size_t at = race.out.find(" attempt=");
  if (race.code != 0 || at == std::string::npos) {
    detail = "raced generation did not report its winning attempt";
    return false;
  }
  const std::string attempt = std::to_string(std::stoul(race.out.substr(at + 9)));
  if (run_cli(dir, "generate --model model.wfc --size 9x9 --seed 17 --attempt " + attempt +
                       " --out pin")
          .code != 0 ||
      slurp(dir / "race.gx.asc") != slurp(dir / "pin.gx.asc") ||
      slurp(dir / "race.gy.asc") != slurp(dir / "pin.gy.asc")) {
    detail = "replaying attempt " + attempt + " did not reproduce the raced output";
    return false;
  }
  detail = "repeat + raced replay of attempt " + attempt + " byte-identical";
  return true;
}

// Slope statistics of 33x33 outputs against a 100x100 training terrain:
// at least 4 of 6 seeds must keep the mean slope within a factor of 3
// and score a histogram intersection of at least 0.35 over 50 bins.
// Budget: 10 minutes.
bool check_distribution(std::string& detail) {
  const auto start = Clock::now();
  const wfct::HeightMap terrain = wfct::synthetic_terrain(wfct::SyntheticKind::kSine, 100, 100);
  const wfct::Model model = model_from(terrain);
  const wfct::GradientField reference = wfct::compute_gradients(terrain);

  int good = 0;
  double worst_ratio = 0.0;
  double worst_score = 1.0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    wfct::GenerateOptions opt;
    opt.rows = 32;
    opt.cols = 32;
    opt.seed = seed;
    const wfct::GradientField field = wfct::generate(model, opt).field;
    const wfct::ComparisonReport report = wfct::compare(reference, field, 50);
    const double lo = std::min(report.input.mean, report.output.mean);
    const double hi = std::max(report.input.mean, report.output.mean);
    const double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    const double score = report.histogram.intersection_score;
    worst_ratio = std::max(worst_ratio, ratio);
    worst_score = std::min(worst_score, score);
    if (ratio <= 3.0 && score >= 0.35) ++good;
  }
  const double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d/6 runs good, worst ratio %.2f, worst intersection %.2f, %s",
                good, worst_ratio, worst_score, fmt_secs(elapsed).c_str());
  detail = buf;
  return good >= 4 && elapsed < 600.0;
}

// The horizontally mirrored training field must carry exactly the
// column-reversed, sign-flipped gx of the unmirrored field.
bool check_mirror_exactness(std::string& detail) {
  std::mt19937_64 rng(707);
  const wfct::Transform pair[] = {wfct::Transform::kIdentity, wfct::Transform::kHFlip};
  for (int i = 0; i < 20; ++i) {
    const int rows = 2 + static_cast<int>(wfct::uniform_below(rng, 39));
    const int cols = 2 + static_cast<int>(wfct::uniform_below(rng, 39));
    const auto fields = wfct::training_set(random_heightmap(rng, rows, cols), pair);
    const wfct::GradientField& id = fields[0];
    const wfct::GradientField& hf = fields[1];
    for (int y = 0; y < id.rows(); ++y) {
      for (int x = 0; x < id.cols(); ++x) {
        if (hf.gx(y, x) != -id.gx(y, id.cols() - 1 - x)) {
          detail = "mismatch at (" + std::to_string(y) + "," + std::to_string(x) + ") on a " +
                   std::to_string(rows) + "x" + std::to_string(cols) + " map";
          return false;
        }
      }
    }
  }
  detail = "20 random maps, exact";
  return true;
}

// Adjacency inference must stay fast on a full-size noisy catalog (tens
// of thousands of patterns, 60-second budget) and agree with all-pairs
// brute force on a 2000-pattern subsample.
bool check_adjacency_scale(std::string& detail) {
  const wfct::HeightMap walk =
      wfct::synthetic_terrain(wfct::SyntheticKind::kRandomWalk, 100, 100, 7);
  const std::vector<wfct::GradientField> fields = wfct::training_set(walk);
  wfct::PatternCatalog catalog = wfct::extract_patterns(fields);
  const std::size_t total = catalog.size();

  const auto start = Clock::now();
  const wfct::AdjacencyRules rules = wfct::infer_adjacency(catalog);
  const double elapsed = seconds_since(start);
  if (rules.pattern_count() != total) {
    detail = "rule table size mismatch";
    return false;
  }

  wfct::PatternCatalog sample;
  const std::size_t stride = std::max<std::size_t>(1, total / 2000);
  for (std::size_t i = 0; i < total && sample.size() < 2000; i += stride) {
    sample.patterns.push_back(catalog.at(static_cast<wfct::PatternId>(i)));
  }
  if (wfct::infer_adjacency(sample).allowed != oracle::brute_force_adjacency(sample).allowed) {
    detail = "subsample adjacency disagrees with brute force";
    return false;
  }

  detail = std::to_string(total) + " patterns inferred in " + fmt_secs(elapsed) + ", " +
           std::to_string(sample.size()) + "-pattern brute-force match";
  return elapsed < 60.0;
}

// Observing a cell whose domain holds patterns with frequencies 3 and 1
// must pick the heavy pattern 75% of the time, within ±3% over 10,000
// independently seeded draws.
bool check_observation_weights(std::string& detail) {
  std::vector<std::int32_t> cells;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 6; ++c) cells.push_back(c == 5 ? 1 : 0);
  }
  const wfct::Transform identity[] = {wfct::Transform::kIdentity};
  const wfct::Model model = model_from(wfct::make_heightmap(3, 6, cells), identity);
  if (model.catalog.size() != 2) {
    detail = "fixture gave " + std::to_string(model.catalog.size()) + " patterns, wanted 2";
    return false;
  }
  const wfct::PatternId heavy = model.catalog.at(0).frequency == 3 ? 0 : 1;
  if (model.catalog.at(heavy).frequency != 3 || model.catalog.at(1 - heavy).frequency != 1) {
    detail = "fixture frequencies are not 3:1";
    return false;
  }

  int picks = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    std::mt19937_64 rng = wfct::attempt_engine(2024, static_cast<std::uint32_t>(i));
    wfct::WaveGrid wave(model, 1, 1, std::move(rng));
    wave.observe({0, 0});
    if (wave.pattern_at(0, 0) == heavy) ++picks;
  }
  const double rate = static_cast<double>(picks) / draws;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "heavy pattern picked %.1f%%", rate * 100.0);
  detail = buf;
  return rate >= 0.72 && rate <= 0.78;
}

// A model with no vertically compatible pairs must exhaust its restart
// budget, exit with code 3, and report how many attempts it made.
bool check_failure_path(std::string& detail) {
  const fs::path dir = fs::temp_directory_path() / ("wfct-acc-fail-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Cleanup {
    const fs::path& p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{dir};

  const wfct::HeightMap layered = wfct::make_heightmap(3, 3, {0, 0, 0, 0, 0, 0, 1, 1, 1});
  std::ofstream(dir / "layered.asc") << wfct::write_ascii_grid(layered);
  if (run_cli(dir, "extract --in layered.asc --transforms identity --out model.wfc").code != 0) {
    detail = "fixture extraction failed";
    return false;
  }
  const RunResult r =
      run_cli(dir, "generate --model model.wfc --size 3x3 --max-restarts 7 --out g");
  if (r.code != 3) {
    detail = "exit code was " + std::to_string(r.code) + ", wanted 3";
    return false;
  }
  if (r.err.find("attempts=7") == std::string::npos) {
    detail = "stderr did not report the attempt count: " + r.err;
    return false;
  }
  detail = "exit 3, attempts=7 reported";
  return true;
}

}  // namespace

int main() {
  using Check = bool (*)(std::string&);
  const std::pair<const char*, Check> criteria[] = {
      {"differentiate-then-integrate reproduces terrain bit for bit", check_round_trip},
      {"every synthesized field integrates exactly in both orders", check_generated_integrable},
      {"synthesized fields contain only learned patterns", check_catalog_closure},
      {"small-alphabet outputs stay within the exhaustive tiling set", check_small_alphabet},
      {"equal settings give byte-identical outputs, raced runs replay", check_determinism},
      {"synthesized slope statistics track the training terrain", check_distribution},
      {"mirrored training gradients are exact mirror images", check_mirror_exactness},
      {"adjacency inference scales to a full noisy catalog", check_adjacency_scale},
      {"cell observation follows pattern frequencies", check_observation_weights},
      {"an unsatisfiable model exits 3 with its attempt count", check_failure_path},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    std::string detail;
    bool pass = false;
    try {
      pass = check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n" << std::flush;
  }
  std::cout << (10 - failures) << "/10 criteria passed\n";
  return failures;
}
