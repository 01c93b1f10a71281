#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wfcterrain/error.hpp"
#include "wfcterrain/gradient.hpp"
#include "wfcterrain/model.hpp"
#include "wfcterrain/rng.hpp"
#include "wfcterrain/wave.hpp"

namespace wfct {

struct GenerateOptions {
  // Wave grid dimensions in cells; the decoded gradient field is one
  // larger on each axis because neighboring 2x2 patterns overlap.
  int rows = 0;
  int cols = 0;
  std::uint64_t seed = 0;
  int max_restarts = 100;
  // Attempts are numbered first_attempt, first_attempt + 1, ... Each
  // gets its own engine derived from (seed, attempt index), so pinning
  // first_attempt with max_restarts 1 replays exactly one attempt.
  std::uint32_t first_attempt = 0;
  int parallel_attempts = 1;
};

struct GenerateResult {
  GradientField field;
  std::uint32_t attempt = 0;  // index of the attempt that produced the field
  int attempts_tried = 0;     // attempts begun across all workers
};

/// Reads the collapsed wave back into a gradient field. Adjacent
/// patterns agree on their shared overlap, so each output position can
/// take its value from any pattern covering it; we take the top-left
/// covering cell. Disagreement or an uncollapsed cell means the solver
/// broke its own invariant, hence logic_error rather than a data error.
inline GradientField decode_wave(const Model& model, const WaveGrid& wave) {
  const int rows = wave.rows();
  const int cols = wave.cols();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!wave.is_collapsed(r, c)) throw std::logic_error("decode_wave: uncollapsed cell");
      const Pattern& p = model.catalog.at(wave.pattern_at(r, c));
      if (c + 1 < cols &&
          !overlap_compatible(p, model.catalog.at(wave.pattern_at(r, c + 1)), Direction::kRight)) {
        throw std::logic_error("decode_wave: incompatible horizontal neighbors");
      }
      if (r + 1 < rows &&
          !overlap_compatible(p, model.catalog.at(wave.pattern_at(r + 1, c)), Direction::kDown)) {
        throw std::logic_error("decode_wave: incompatible vertical neighbors");
      }
    }
  }
  Grid<std::int32_t> gx(rows + 1, cols + 1, 0);
  Grid<std::int32_t> gy(rows + 1, cols + 1, 0);
  for (int y = 0; y <= rows; ++y) {
    const int cy = std::min(y, rows - 1);
    for (int x = 0; x <= cols; ++x) {
      const int cx = std::min(x, cols - 1);
      const Pattern& p = model.catalog.at(wave.pattern_at(cy, cx));
      gx(y, x) = p.gx(y - cy, x - cx);
      gy(y, x) = p.gy(y - cy, x - cx);
    }
  }
  return make_field(std::move(gx), std::move(gy));
}

/// One full collapse attempt. Empty on contradiction.
inline std::optional<GradientField> run_attempt(const Model& model, int rows, int cols,
                                                std::uint64_t seed, std::uint32_t attempt) {
  WaveGrid wave(model, rows, cols, attempt_engine(seed, attempt));
  if (wave.propagate_all() == PropagateResult::kContradiction) return std::nullopt;
  while (auto cell = wave.min_entropy_cell()) {
    wave.observe(*cell);
    if (wave.propagate(*cell) == PropagateResult::kContradiction) return std::nullopt;
  }
  return decode_wave(model, wave);
}

namespace detail {

inline GenerateResult generate_sequential(const Model& model, const GenerateOptions& opt) {
  for (int i = 0; i < opt.max_restarts; ++i) {
    const std::uint32_t attempt = opt.first_attempt + static_cast<std::uint32_t>(i);
    if (auto field = run_attempt(model, opt.rows, opt.cols, opt.seed, attempt)) {
      return GenerateResult{std::move(*field), attempt, i + 1};
    }
  }
  throw GenerationFailure(
      "all " + std::to_string(opt.max_restarts) + " attempts hit a contradiction",
      opt.max_restarts);
}

inline GenerateResult generate_racing(const Model& model, const GenerateOptions& opt) {
  std::atomic<std::uint32_t> next{0};
  std::atomic<int> started{0};
  std::atomic<bool> done{false};
  std::mutex winner_mutex;
  std::optional<GenerateResult> winner;

  auto worker = [&] {
    while (!done.load(std::memory_order_acquire)) {
      const std::uint32_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= static_cast<std::uint32_t>(opt.max_restarts)) return;
      started.fetch_add(1, std::memory_order_relaxed);
      const std::uint32_t attempt = opt.first_attempt + i;
      auto field = run_attempt(model, opt.rows, opt.cols, opt.seed, attempt);
      if (!field) continue;
      std::lock_guard<std::mutex> lock(winner_mutex);
      if (!winner) {
        winner = GenerateResult{std::move(*field), attempt, 0};
        done.store(true, std::memory_order_release);
      }
      return;
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(opt.parallel_attempts);
  for (int t = 0; t < opt.parallel_attempts; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (!winner) {
    throw GenerationFailure(
        "all " + std::to_string(opt.max_restarts) + " attempts hit a contradiction",
        opt.max_restarts);
  }
  winner->attempts_tried = started.load();
  return std::move(*winner);
}

}  // namespace detail

/// Synthesizes a gradient field from a trained model. Attempts run with
/// engines derived from (seed, attempt index); the first attempt that
/// collapses without contradiction wins and its index is reported, so
/// any output can be replayed exactly by pinning that index. With
/// parallel_attempts > 1 the attempts race and the winner is whichever
/// success lands first.
inline GenerateResult generate(const Model& model, const GenerateOptions& opt) {
  if (opt.rows < 1 || opt.cols < 1) throw RangeError("generate: grid must be at least 1x1 cells");
  if (opt.max_restarts < 1) throw RangeError("generate: max_restarts must be at least 1");
  if (opt.parallel_attempts < 1) {
    throw RangeError("generate: parallel_attempts must be at least 1");
  }
  if (opt.parallel_attempts == 1) return detail::generate_sequential(model, opt);
  return detail::generate_racing(model, opt);
}

}  // namespace wfct
