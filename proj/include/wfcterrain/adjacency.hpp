#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wfcterrain/error.hpp"
#include "wfcterrain/pattern.hpp"

namespace wfct {

/// Per-pattern, per-direction sets of compatible pattern ids, stored as
/// ascending id vectors. Symmetric by construction:
/// b in allowed(a, RIGHT) <=> a in allowed(b, LEFT).
struct AdjacencyRules {
  // indexed [direction][pattern id]
  std::array<std::vector<std::vector<PatternId>>, 4> allowed;

  std::size_t pattern_count() const { return allowed[0].size(); }

  const std::vector<PatternId>& at(PatternId id, Direction d) const {
    return allowed[static_cast<std::size_t>(d)][id];
  }
};

namespace detail {

struct BoundaryKeyHash {
  std::size_t operator()(const std::array<std::int32_t, 4>& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int32_t v : k) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using BoundaryIndex = std::unordered_map<std::array<std::int32_t, 4>, std::vector<PatternId>,
                                         BoundaryKeyHash>;

}  // namespace detail

/// Compatibility over ALL pattern pairs (not just observed neighbors),
/// via the overlap-equality predicate. Patterns are bucketed by their
/// boundary strips and joined through the bucket table, so inference is
/// near-linear in catalog size rather than the quadratic all-pairs scan.
inline AdjacencyRules infer_adjacency(const PatternCatalog& catalog) {
  if (catalog.patterns.empty()) throw ModelError("cannot infer adjacency of an empty catalog");
  const std::size_t n = catalog.size();

  // One bucket table per side; ids are appended in ascending order, so
  // every bucket (and thus every rule set) comes out sorted.
  std::array<detail::BoundaryIndex, 4> by_side;
  for (auto& index : by_side) index.reserve(n * 2);
  for (PatternId id = 0; id < n; ++id) {
    for (Direction side : kAllDirections) {
      by_side[static_cast<std::size_t>(side)][boundary_key(catalog.at(id), side)].push_back(id);
    }
  }

  AdjacencyRules rules;
  for (auto& per_pattern : rules.allowed) per_pattern.resize(n);
  for (PatternId id = 0; id < n; ++id) {
    for (Direction d : kAllDirections) {
      // b fits in direction d of a iff b's facing strip equals a's strip.
      const auto& buckets = by_side[static_cast<std::size_t>(opposite(d))];
      auto it = buckets.find(boundary_key(catalog.at(id), d));
      if (it != buckets.end()) {
        rules.allowed[static_cast<std::size_t>(d)][id] = it->second;
      }
    }
  }
  return rules;
}

/// Ids that allow themselves as neighbor in every direction. The run
/// may still be fine, but such patterns can tile arbitrarily large
/// uniform regions, so surfacing them helps diagnose repetitive output.
inline std::vector<PatternId> fully_self_adjacent(const AdjacencyRules& rules) {
  std::vector<PatternId> ids;
  for (PatternId id = 0; id < rules.pattern_count(); ++id) {
    bool all = true;
    for (Direction d : kAllDirections) {
      const auto& a = rules.at(id, d);
      if (!std::binary_search(a.begin(), a.end(), id)) {
        all = false;
        break;
      }
    }
    if (all) ids.push_back(id);
  }
  return ids;
}

}  // namespace wfct
