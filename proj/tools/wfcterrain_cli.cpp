// Command-line driver for the terrain synthesis pipeline:
//   synth/ingest -> extract -> generate -> reconstruct -> evaluate/render
// Exit codes: 0 success, 1 usage error, 2 data error, 3 generation failure.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfcterrain/report_json.hpp"
#include "wfcterrain/wfcterrain.hpp"

namespace {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("WFC_TERRAIN_LOG");
    if (env == nullptr) return LogLevel::kInfo;
    const std::string v(env);
    if (v == "error") return LogLevel::kError;
    if (v == "debug") return LogLevel::kDebug;
    return LogLevel::kInfo;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::kInfo) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::kDebug) std::cerr << "[debug] " << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wfct::Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw wfct::Error("cannot read " + path);
  return std::move(buf).str();
}

// All outputs land via temp file + rename so a failed run never leaves a
// truncated artifact behind.
void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw wfct::Error("cannot create " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.good()) throw wfct::Error("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw wfct::Error("cannot move " + tmp + " to " + path + ": " + ec.message());
}

wfct::HeightMap read_heightmap(const std::string& path) {
  return wfct::read_ascii_grid(read_file(path)).to_heightmap();
}

wfct::GradientField read_field(const std::string& prefix) {
  return wfct::field_from_ascii(read_file(prefix + ".gx.asc"), read_file(prefix + ".gy.asc"));
}

void write_field(const std::string& prefix, const wfct::GradientField& field) {
  const auto [gx_text, gy_text] = wfct::field_to_ascii(field);
  write_file_atomic(prefix + ".gx.asc", gx_text);
  write_file_atomic(prefix + ".gy.asc", gy_text);
}

// Either a heightmap file or a gradient-field prefix is accepted where a
// field is needed; a heightmap is converted on the fly.
wfct::GradientField load_field_or_heightmap(const std::string& arg) {
  if (std::filesystem::exists(arg + ".gx.asc")) {
    log_debug(arg + ": reading gradient field pair");
    return read_field(arg);
  }
  log_debug(arg + ": reading heightmap and differentiating");
  return wfct::compute_gradients(read_heightmap(arg));
}

std::pair<int, int> parse_size(const std::string& text) {
  const std::size_t sep = text.find('x');
  int rows = 0;
  int cols = 0;
  try {
    if (sep == std::string::npos) throw std::invalid_argument("no separator");
    std::size_t used = 0;
    rows = std::stoi(text.substr(0, sep), &used);
    if (used != sep) throw std::invalid_argument("trailing junk");
    const std::string rest = text.substr(sep + 1);
    cols = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw CLI::ValidationError("--size", "expected ROWSxCOLS, e.g. 33x33");
  }
  return {rows, cols};
}

struct IngestArgs {
  std::string hgt_path;
  int factor = 8;
  std::vector<int> window;  // row0, col0, height, width
  std::string out_path;
};

void run_ingest(const IngestArgs& args) {
  const std::string bytes = read_file(args.hgt_path);
  wfct::HeightMap hm = wfct::parse_hgt(
      std::span(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()));
  log_info("parsed " + args.hgt_path + ": " + std::to_string(hm.rows()) + "x" +
           std::to_string(hm.cols()));
  hm = wfct::downsample_bilinear(hm, args.factor);
  if (!args.window.empty()) {
    hm = wfct::window(hm, args.window[0], args.window[1], args.window[2], args.window[3]);
  }
  if (hm.void_count() != 0) {
    throw wfct::VoidDataError("selected region contains " + std::to_string(hm.void_count()) +
                              " void cells");
  }

  // Georeference the output when the file is named like an SRTM tile
  // (N26E057.hgt): the tile spans one degree from its south-west corner.
  wfct::GridMeta meta;
  const std::string stem = std::filesystem::path(args.hgt_path).stem().string();
  try {
    const wfct::TileId tile = wfct::TileId::parse(stem);
    const double cellsize = args.factor / 3600.0;
    const int row0 = args.window.empty() ? 0 : args.window[0];
    const int col0 = args.window.empty() ? 0 : args.window[1];
    meta.cellsize = cellsize;
    meta.xllcorner = tile.easting + col0 * cellsize;
    meta.yllcorner = (tile.northing + 1) - (row0 + hm.rows()) * cellsize;
  } catch (const wfct::ParseError&) {
    log_debug("file name is not an SRTM tile id; writing default georeference");
  }

  write_file_atomic(args.out_path, wfct::write_ascii_grid(hm, meta));
  std::cout << "rows=" << hm.rows() << " cols=" << hm.cols() << " voids=" << hm.void_count()
            << "\n";
}

struct ExtractArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> transforms{"identity", "hflip", "vflip", "rot180"};
  std::string out_path;
};

void run_extract(const ExtractArgs& args) {
  std::vector<wfct::Transform> transforms;
  transforms.reserve(args.transforms.size());
  for (const std::string& name : args.transforms) {
    transforms.push_back(wfct::parse_transform(name));
  }

  std::vector<wfct::GradientField> fields;
  for (const std::string& path : args.inputs) {
    const wfct::HeightMap hm = read_heightmap(path);
    auto member = wfct::training_set(hm, transforms);
    log_debug(path + ": " + std::to_string(member.size()) + " training fields");
    for (auto& f : member) fields.push_back(std::move(f));
  }

  wfct::PatternCatalog catalog = wfct::extract_patterns(fields);
  const auto start = std::chrono::steady_clock::now();
  wfct::Model model = wfct::build_model(std::move(catalog));
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  const auto degenerate = wfct::fully_self_adjacent(model.rules);
  if (!degenerate.empty()) {
    std::cerr << "[warn] " << degenerate.size()
              << " pattern(s) are self-adjacent in all four directions; outputs may repeat\n";
  }

  write_file_atomic(args.out_path, wfct::save_model(model));
  std::cout << "patterns=" << model.catalog.size() << " adjacency_ms=" << elapsed.count() << "\n";
}

struct GenerateArgs {
  std::string model_path;
  std::string size_text;
  std::uint64_t seed = 0;
  int max_restarts = 100;
  std::optional<std::uint32_t> attempt;
  int parallel_attempts = 1;
  std::string out_prefix;
};

void run_generate(const GenerateArgs& args) {
  const auto [rows, cols] = parse_size(args.size_text);
  if (rows < 2 || cols < 2) {
    throw CLI::ValidationError("--size", "output field must be at least 2x2");
  }
  const wfct::Model model = wfct::load_model(read_file(args.model_path));
  log_info("model: " + std::to_string(model.catalog.size()) + " patterns");

  wfct::GenerateOptions opt;
  // --size names the emitted gradient-field dimensions; the wave grid of
  // overlapping 2x2 patterns is one smaller on each axis.
  opt.rows = rows - 1;
  opt.cols = cols - 1;
  opt.seed = args.seed;
  opt.max_restarts = args.max_restarts;
  opt.parallel_attempts = args.parallel_attempts;
  if (args.attempt) {
    // Replay exactly one attempt, e.g. the winner of an earlier race.
    opt.first_attempt = *args.attempt;
    opt.max_restarts = 1;
  }

  const wfct::GenerateResult result = wfct::generate(model, opt);
  write_field(args.out_prefix, result.field);
  std::cout << "seed=" << args.seed << " attempt=" << result.attempt
            << " attempts_tried=" << result.attempts_tried << "\n";
}

struct ReconstructArgs {
  std::string in_prefix;
  std::int32_t base = 0;
  std::string base_from;
  bool verify = false;
  std::string out_path;
};

void run_reconstruct(const ReconstructArgs& args) {
  const wfct::GradientField field = read_field(args.in_prefix);
  std::int32_t base = args.base;
  if (!args.base_from.empty()) {
    base = wfct::base_from_reference(read_heightmap(args.base_from));
    log_info("base height from " + args.base_from + ": " + std::to_string(base));
  }
  const wfct::HeightMap hm = wfct::integrate(field, base);
  write_file_atomic(args.out_path, wfct::write_ascii_grid(hm));
  std::cout << "rows=" << hm.rows() << " cols=" << hm.cols() << " base=" << base << "\n";
  if (args.verify) {
    // integrate() already compared row-first against column-first sums
    // cell by cell, so reaching this line certifies exactness.
    const wfct::CurlResidualReport report = wfct::curl_residual(field);
    std::cout << "curl_max=" << report.max_abs_residual
              << " curl_violations=" << report.violation_count << " order_max_deviation=0\n";
  }
}

struct EvaluateArgs {
  std::string input;
  std::string output;
  int bins = 50;
  std::string mode = "euclidean";
  std::string report_path;
  std::string gnuplot_path;
};

void run_evaluate(const EvaluateArgs& args) {
  const wfct::MagnitudeMode mode = wfct::parse_magnitude_mode(args.mode);
  const wfct::GradientField in = load_field_or_heightmap(args.input);
  const wfct::GradientField out = load_field_or_heightmap(args.output);
  const wfct::ComparisonReport report = wfct::compare(in, out, args.bins, mode);

  std::cout << "mean_in=" << report.input.mean << " mean_out=" << report.output.mean << "\n"
            << "median_in=" << report.input.median << " median_out=" << report.output.median
            << "\n"
            << "std_in=" << report.input.stddev << " std_out=" << report.output.stddev << "\n"
            << "intersection=" << report.histogram.intersection_score << "\n";

  if (!args.report_path.empty()) {
    write_file_atomic(args.report_path, wfct::report_to_json(report).dump(2) + "\n");
  }
  if (!args.gnuplot_path.empty()) {
    write_file_atomic(args.gnuplot_path, wfct::gnuplot_histogram(report.histogram, report.input.n,
                                                                 report.output.n));
  }
}

struct RenderArgs {
  std::string in_path;
  std::string out_path;
};

void run_render(const RenderArgs& args) {
  const wfct::HeightMap hm = read_heightmap(args.in_path);
  const std::vector<unsigned char> pgm = wfct::render_pgm(hm);
  write_file_atomic(args.out_path,
                    std::string_view(reinterpret_cast<const char*>(pgm.data()), pgm.size()));
  std::cout << "rows=" << hm.rows() << " cols=" << hm.cols() << "\n";
}

struct SynthArgs {
  std::string kind = "sine";
  int rows = 0;
  int cols = 0;
  std::uint64_t seed = 0;
  std::string out_path;
};

void run_synth(const SynthArgs& args) {
  const wfct::HeightMap hm =
      wfct::synthetic_terrain(wfct::parse_synthetic_kind(args.kind), args.rows, args.cols,
                              args.seed);
  write_file_atomic(args.out_path, wfct::write_ascii_grid(hm));
  std::cout << "rows=" << hm.rows() << " cols=" << hm.cols() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terrain heightmap synthesis from learned slope patterns"};
  app.require_subcommand(1);

  IngestArgs ingest;
  CLI::App* cmd_ingest = app.add_subcommand(
      "ingest", "Parse an SRTM .hgt tile, downsample, window, write an ASCII grid");
  cmd_ingest->add_option("--hgt", ingest.hgt_path, "input .hgt file")->required();
  cmd_ingest->add_option("--factor", ingest.factor, "downsample factor")->capture_default_str();
  cmd_ingest
      ->add_option("--window", ingest.window,
                   "row0,col0,height,width selection after downsampling")
      ->delimiter(',')
      ->expected(4);
  cmd_ingest->add_option("--out", ingest.out_path, "output ASCII grid")->required();
  cmd_ingest->callback([&] { run_ingest(ingest); });

  ExtractArgs extract;
  CLI::App* cmd_extract = app.add_subcommand(
      "extract", "Learn a pattern model from one or more heightmap grids");
  cmd_extract->add_option("--in", extract.inputs, "input ASCII grids")->required();
  cmd_extract
      ->add_option("--transforms", extract.transforms,
                   "training transforms (identity, hflip, vflip, rot180)")
      ->delimiter(',')
      ->capture_default_str();
  cmd_extract->add_option("--out", extract.out_path, "output model file")->required();
  cmd_extract->callback([&] { run_extract(extract); });

  GenerateArgs generate;
  CLI::App* cmd_generate =
      app.add_subcommand("generate", "Synthesize a gradient field from a model");
  cmd_generate->add_option("--model", generate.model_path, "model file")->required();
  cmd_generate->add_option("--size", generate.size_text, "output field size, ROWSxCOLS")
      ->required();
  cmd_generate->add_option("--seed", generate.seed, "RNG seed")->capture_default_str();
  cmd_generate->add_option("--max-restarts", generate.max_restarts, "attempts before giving up")
      ->capture_default_str();
  cmd_generate->add_option("--attempt", generate.attempt,
                           "replay exactly this attempt index (implies one attempt)");
  cmd_generate
      ->add_option("--parallel-attempts", generate.parallel_attempts,
                   "worker threads racing independent attempts")
      ->capture_default_str();
  cmd_generate->add_option("--out", generate.out_prefix,
                           "output prefix for <prefix>.gx.asc / <prefix>.gy.asc")
      ->required();
  cmd_generate->callback([&] { run_generate(generate); });

  ReconstructArgs reconstruct;
  CLI::App* cmd_reconstruct =
      app.add_subcommand("reconstruct", "Integrate a gradient field into a heightmap");
  cmd_reconstruct->add_option("--in", reconstruct.in_prefix, "gradient field prefix")->required();
  CLI::Option* base_opt = cmd_reconstruct
                              ->add_option("--base", reconstruct.base,
                                           "height of the north-west corner")
                              ->capture_default_str();
  cmd_reconstruct
      ->add_option("--base-from", reconstruct.base_from,
                   "take the base height from this heightmap's median")
      ->excludes(base_opt);
  cmd_reconstruct->add_flag("--verify", reconstruct.verify,
                            "print the integrability check results");
  cmd_reconstruct->add_option("--out", reconstruct.out_path, "output ASCII grid")->required();
  cmd_reconstruct->callback([&] { run_reconstruct(reconstruct); });

  EvaluateArgs evaluate;
  CLI::App* cmd_evaluate = app.add_subcommand(
      "evaluate", "Compare slope distributions of two fields or heightmaps");
  cmd_evaluate
      ->add_option("--input", evaluate.input, "reference: field prefix or heightmap grid")
      ->required();
  cmd_evaluate
      ->add_option("--output", evaluate.output, "candidate: field prefix or heightmap grid")
      ->required();
  cmd_evaluate->add_option("--bins", evaluate.bins, "histogram bin count")->capture_default_str();
  cmd_evaluate->add_option("--mode", evaluate.mode, "slope magnitude: euclidean or pooled")
      ->capture_default_str();
  cmd_evaluate->add_option("--report", evaluate.report_path, "write a JSON report here");
  cmd_evaluate->add_option("--gnuplot", evaluate.gnuplot_path,
                           "write a gnuplot histogram dump here");
  cmd_evaluate->callback([&] { run_evaluate(evaluate); });

  RenderArgs render;
  CLI::App* cmd_render = app.add_subcommand("render", "Render a heightmap grid as 16-bit PGM");
  cmd_render->add_option("--in", render.in_path, "input ASCII grid")->required();
  cmd_render->add_option("--out", render.out_path, "output PGM file")->required();
  cmd_render->callback([&] { run_render(render); });

  SynthArgs synth;
  CLI::App* cmd_synth =
      app.add_subcommand("synth", "Write a synthetic test terrain (ramp, sine, random-walk)");
  cmd_synth->add_option("--kind", synth.kind, "ramp, sine, or random-walk")
      ->capture_default_str();
  cmd_synth->add_option("--rows", synth.rows, "grid rows")->required();
  cmd_synth->add_option("--cols", synth.cols, "grid columns")->required();
  cmd_synth->add_option("--seed", synth.seed, "RNG seed (random-walk only)")
      ->capture_default_str();
  cmd_synth->add_option("--out", synth.out_path, "output ASCII grid")->required();
  cmd_synth->callback([&] { run_synth(synth); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const wfct::GenerationFailure& e) {
    std::cerr << "generation failed: " << e.what() << " (attempts=" << e.attempts << ")\n";
    return 3;
  } catch (const wfct::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
