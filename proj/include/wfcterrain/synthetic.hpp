#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "wfcterrain/heightmap.hpp"
#include "wfcterrain/rng.hpp"

namespace wfct {

/// Desk-scale terrain fixtures for runs without SRTM data.
enum class SyntheticKind {
  kRamp,       // value = column index
  kSine,       // product of sines, amplitude 50 m, period 16 px
  kRandomWalk  // seeded integer walk, clamped to [-500, 9000]
};

inline SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "ramp") return SyntheticKind::kRamp;
  if (name == "sine") return SyntheticKind::kSine;
  if (name == "random-walk") return SyntheticKind::kRandomWalk;
  throw ParseError("unknown synthetic terrain kind: " + std::string(name));
}

inline HeightMap synthetic_terrain(SyntheticKind kind, int rows, int cols,
                                   std::uint64_t seed = 0) {
  if (rows < 1 || cols < 1) throw RangeError("synthetic terrain needs positive dimensions");
  Grid<std::int32_t> g(rows, cols);
  switch (kind) {
    case SyntheticKind::kRamp:
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) g(r, c) = c;
      }
      break;
    case SyntheticKind::kSine: {
      constexpr double kAmplitude = 50.0;
      constexpr double kPeriod = 16.0;
      const double w = 2.0 * std::numbers::pi / kPeriod;
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          g(r, c) = static_cast<std::int32_t>(
              std::llround(kAmplitude * std::sin(w * r) * std::sin(w * c)));
        }
      }
      break;
    }
    case SyntheticKind::kRandomWalk: {
      std::mt19937_64 rng(seed);
      auto step = [&] { return static_cast<std::int32_t>(uniform_below(rng, 9)) - 4; };
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          std::int32_t base = 0;
          if (c > 0) {
            base = g(r, c - 1);
          } else if (r > 0) {
            base = g(r - 1, 0);
          }
          g(r, c) = std::clamp((r == 0 && c == 0) ? 0 : base + step(), -500, 9000);
        }
      }
      break;
    }
  }
  return HeightMap{std::move(g)};
}

}  // namespace wfct
