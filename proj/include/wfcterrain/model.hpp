#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "wfcterrain/adjacency.hpp"
#include "wfcterrain/error.hpp"
#include "wfcterrain/pattern.hpp"

namespace wfct {

/// A trained model: the deduplicated pattern catalog plus the full
/// adjacency relation. This is what `extract` writes and `generate` reads.
struct Model {
  PatternCatalog catalog;
  AdjacencyRules rules;
};

inline Model build_model(PatternCatalog catalog) {
  Model m;
  m.rules = infer_adjacency(catalog);
  m.catalog = std::move(catalog);
  return m;
}

namespace detail {

inline constexpr std::string_view kModelMagic = "wfcterrain-model";
inline constexpr std::string_view kModelVersion = "v1";

inline std::uint64_t parse_u64_token(std::string_view tok, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("model file: bad ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

inline std::int64_t parse_i64_token(std::string_view tok, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("model file: bad ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

/// Serializes a model as deterministic, diffable text.
///
///   wfcterrain-model v1
///   pattern_size 2 channels 2 patterns <P>
///   pattern <id> gx00 gx01 gx10 gx11 gy00 gy01 gy10 gy11 freq <n>   (P lines, id order)
///   adj <id> R <ids...>                                             (P lines, id order)
///   adj <id> D <ids...>
///
/// LEFT/UP rules are not stored; the loader rebuilds them from the
/// symmetry b in allowed(a, R) <=> a in allowed(b, L).
inline std::string save_model(const Model& model) {
  const std::size_t n = model.catalog.size();
  std::string out;
  out += detail::kModelMagic;
  out += ' ';
  out += detail::kModelVersion;
  out += '\n';
  out += "pattern_size 2 channels 2 patterns " + std::to_string(n) + "\n";
  for (PatternId id = 0; id < n; ++id) {
    const Pattern& p = model.catalog.at(id);
    out += "pattern " + std::to_string(id);
    for (std::int32_t c : p.cells) {
      out += ' ';
      out += std::to_string(c);
    }
    out += " freq " + std::to_string(p.frequency) + "\n";
  }
  for (Direction d : {Direction::kRight, Direction::kDown}) {
    const char tag = d == Direction::kRight ? 'R' : 'D';
    for (PatternId id = 0; id < n; ++id) {
      out += "adj " + std::to_string(id) + ' ';
      out += tag;
      for (PatternId other : model.rules.at(id, d)) {
        out += ' ';
        out += std::to_string(other);
      }
      out += '\n';
    }
  }
  return out;
}

/// Parses and validates the text format written by save_model. Rejects
/// unknown versions, non-canonical pattern order, out-of-range ids, and
/// adjacency pairs whose overlaps do not actually agree.
inline Model load_model(std::string_view text) {
  std::vector<std::vector<std::string_view>> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    std::vector<std::string_view> toks;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      if (i > start) toks.push_back(line.substr(start, i - start));
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }

  std::size_t cursor = 0;
  auto next_line = [&]() -> const std::vector<std::string_view>& {
    if (cursor >= lines.size()) throw ParseError("model file: unexpected end of file");
    return lines[cursor++];
  };

  {
    const auto& header = next_line();
    if (header.size() != 2 || header[0] != detail::kModelMagic) {
      throw ParseError("model file: not a wfcterrain-model file");
    }
    if (header[1] != detail::kModelVersion) {
      throw ParseError("model file: unsupported version '" + std::string(header[1]) + "'");
    }
  }

  std::uint64_t pattern_count = 0;
  {
    const auto& dims = next_line();
    if (dims.size() != 6 || dims[0] != "pattern_size" || dims[2] != "channels" ||
        dims[4] != "patterns") {
      throw ParseError("model file: malformed header line 2");
    }
    if (detail::parse_u64_token(dims[1], "pattern_size") != 2) {
      throw ParseError("model file: only pattern_size 2 is supported");
    }
    if (detail::parse_u64_token(dims[3], "channels") != 2) {
      throw ParseError("model file: only channels 2 is supported");
    }
    pattern_count = detail::parse_u64_token(dims[5], "pattern count");
    if (pattern_count == 0) throw ParseError("model file: pattern count must be positive");
  }

  Model model;
  model.catalog.patterns.reserve(pattern_count);
  for (std::uint64_t id = 0; id < pattern_count; ++id) {
    const auto& toks = next_line();
    if (toks.size() != 12 || toks[0] != "pattern" || toks[10] != "freq") {
      throw ParseError("model file: malformed pattern line " + std::to_string(id));
    }
    if (detail::parse_u64_token(toks[1], "pattern id") != id) {
      throw ParseError("model file: pattern ids must be 0..P-1 in order");
    }
    Pattern p;
    for (int c = 0; c < 8; ++c) {
      std::int64_t v = detail::parse_i64_token(toks[2 + c], "pattern component");
      if (v < std::numeric_limits<std::int32_t>::min() ||
          v > std::numeric_limits<std::int32_t>::max()) {
        throw ParseError("model file: pattern component out of 32-bit range");
      }
      p.cells[c] = static_cast<std::int32_t>(v);
    }
    p.frequency = detail::parse_u64_token(toks[11], "frequency");
    if (p.frequency < 1) throw ParseError("model file: frequency must be >= 1");
    model.catalog.patterns.push_back(p);
  }
  for (PatternId id = 1; id < pattern_count; ++id) {
    if (!(model.catalog.at(id - 1).cells < model.catalog.at(id).cells)) {
      throw ParseError("model file: patterns are not in canonical order");
    }
  }

  for (auto& per_pattern : model.rules.allowed) per_pattern.resize(pattern_count);
  for (Direction d : {Direction::kRight, Direction::kDown}) {
    const char tag = d == Direction::kRight ? 'R' : 'D';
    const Direction rev = opposite(d);
    for (std::uint64_t id = 0; id < pattern_count; ++id) {
      const auto& toks = next_line();
      if (toks.size() < 3 || toks[0] != "adj" || toks[2].size() != 1 || toks[2][0] != tag) {
        throw ParseError(std::string("model file: expected 'adj <id> ") + tag + "' line");
      }
      if (detail::parse_u64_token(toks[1], "adjacency id") != id) {
        throw ParseError("model file: adjacency ids must be 0..P-1 in order");
      }
      auto& fwd = model.rules.allowed[static_cast<std::size_t>(d)][id];
      fwd.reserve(toks.size() - 3);
      for (std::size_t t = 3; t < toks.size(); ++t) {
        std::uint64_t other = detail::parse_u64_token(toks[t], "adjacency target");
        if (other >= pattern_count) {
          throw ParseError("model file: adjacency target out of range");
        }
        if (!fwd.empty() && other <= fwd.back()) {
          throw ParseError("model file: adjacency lists must be strictly ascending");
        }
        if (!overlap_compatible(model.catalog.at(id), model.catalog.at(static_cast<PatternId>(other)), d)) {
          throw ParseError("model file: adjacency pair " + std::to_string(id) + "/" +
                           std::to_string(other) + " fails the overlap check");
        }
        fwd.push_back(static_cast<PatternId>(other));
        model.rules.allowed[static_cast<std::size_t>(rev)][static_cast<PatternId>(other)]
            .push_back(static_cast<PatternId>(id));
      }
    }
  }
  if (cursor != lines.size()) throw ParseError("model file: trailing content");

  // The reversed lists were appended in outer-id order, so they are
  // already sorted; nothing further to normalize.
  return model;
}

}  // namespace wfct
