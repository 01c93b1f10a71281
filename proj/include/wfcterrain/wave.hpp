#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "wfcterrain/error.hpp"
#include "wfcterrain/model.hpp"
#include "wfcterrain/rng.hpp"

namespace wfct {

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class PropagateResult { kOk, kContradiction };

/// One in-progress synthesis: a rows x cols grid of cells, each holding
/// the set of patterns still possible there (a bitmap plus a cardinality
/// cache). Entropy is domain cardinality; ties break uniformly at random.
class WaveGrid {
 public:
  WaveGrid(const Model& model, int rows, int cols, std::mt19937_64 rng)
      : model_(&model), rows_(rows), cols_(cols), rng_(std::move(rng)) {
    if (model.catalog.patterns.empty()) throw ModelError("wave grid needs a non-empty catalog");
    if (rows < 1 || cols < 1) throw RangeError("wave grid dimensions must be at least 1x1");
    pattern_count_ = model.catalog.size();
    words_ = (pattern_count_ + 63) / 64;
    bits_.assign(cell_count() * words_, ~std::uint64_t{0});
    const std::size_t tail = pattern_count_ % 64;
    if (tail != 0) {
      const std::uint64_t mask = (std::uint64_t{1} << tail) - 1;
      for (std::size_t ci = 0; ci < cell_count(); ++ci) bits_[ci * words_ + words_ - 1] = mask;
    }
    counts_.assign(cell_count(), static_cast<std::uint32_t>(pattern_count_));
    queued_.assign(cell_count(), 0);
    build_rule_masks();
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t pattern_count() const { return pattern_count_; }

  std::size_t domain_size(int row, int col) const { return counts_[index(row, col)]; }
  bool is_collapsed(int row, int col) const { return domain_size(row, col) == 1; }

  bool all_collapsed() const {
    for (std::uint32_t c : counts_) {
      if (c != 1) return false;
    }
    return true;
  }

  bool has_candidate(int row, int col, PatternId id) const { return test(index(row, col), id); }

  std::vector<PatternId> domain(int row, int col) const {
    std::vector<PatternId> ids;
    ids.reserve(counts_[index(row, col)]);
    for_each_candidate(index(row, col), [&](PatternId id) { ids.push_back(id); });
    return ids;
  }

  /// The single remaining pattern of a collapsed cell.
  PatternId pattern_at(int row, int col) const {
    const std::size_t ci = index(row, col);
    if (counts_[ci] != 1) throw std::logic_error("pattern_at: cell is not collapsed");
    PatternId found = 0;
    for_each_candidate(ci, [&](PatternId id) { found = id; });
    return found;
  }

  /// Uncollapsed cell with the fewest candidates; uniform among ties.
  /// Empty when every cell is already collapsed.
  std::optional<Cell> min_entropy_cell() {
    std::size_t best = pattern_count_ + 1;
    std::uint64_t ties = 0;
    Cell pick;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        const std::uint32_t n = counts_[index(r, c)];
        if (n == 0) throw std::logic_error("min_entropy_cell: empty domain left in place");
        if (n < 2) continue;
        if (n < best) {
          best = n;
          ties = 1;
          pick = {r, c};
        } else if (n == best) {
          // reservoir step: replace the held cell with probability 1/ties
          ++ties;
          if (uniform_below(rng_, ties) == 0) pick = {r, c};
        }
      }
    }
    if (ties == 0) return std::nullopt;
    return pick;
  }

  /// Collapses a cell to one candidate, drawn proportionally to training
  /// frequency among the candidates that remain there.
  PatternId observe(Cell cell) {
    const std::size_t ci = index(cell.row, cell.col);
    if (counts_[ci] < 2) throw std::logic_error("observe: cell has no choice left");
    std::uint64_t total = 0;
    for_each_candidate(ci, [&](PatternId id) { total += model_->catalog.at(id).frequency; });
    std::uint64_t draw = uniform_below(rng_, total);
    PatternId chosen = 0;
    bool found = false;
    for_each_candidate(ci, [&](PatternId id) {
      if (found) return;
      const std::uint64_t f = model_->catalog.at(id).frequency;
      if (draw < f) {
        chosen = id;
        found = true;
      } else {
        draw -= f;
      }
    });
    assert(found);
    set_single(ci, chosen);
    return chosen;
  }

  /// Re-establishes arc consistency outward from one changed cell.
  PropagateResult propagate(Cell changed) {
    enqueue(index(changed.row, changed.col));
    return drain_queue();
  }

  /// Sweeps every cell once (and onward to fixpoint). Run this before
  /// the first observation: a freshly built grid may already contain
  /// candidates with no possible neighbor.
  PropagateResult propagate_all() {
    for (std::size_t ci = 0; ci < cell_count(); ++ci) enqueue(ci);
    return drain_queue();
  }

  /// Forces a cell to a specific candidate and propagates. Test hook.
  PropagateResult collapse_to(Cell cell, PatternId id) {
    const std::size_t ci = index(cell.row, cell.col);
    if (!test(ci, id)) throw std::logic_error("collapse_to: pattern not in the cell's domain");
    set_single(ci, id);
    return propagate(cell);
  }

  /// Removes one candidate from a cell and propagates. Test hook.
  PropagateResult remove_candidate(Cell cell, PatternId id) {
    const std::size_t ci = index(cell.row, cell.col);
    if (!test(ci, id)) throw std::logic_error("remove_candidate: pattern not in the cell's domain");
    clear(ci, id);
    if (counts_[ci] == 0) return PropagateResult::kContradiction;
    return propagate(cell);
  }

 private:
  // Above this catalog size the per-(pattern, direction) candidate
  // bitmasks get heavy (4 * P^2 bits), so compatibility falls back to
  // scanning the sorted rule lists against the neighbor's bitmap.
  static constexpr std::size_t kRuleMaskPatternLimit = 8192;

  std::size_t cell_count() const { return static_cast<std::size_t>(rows_) * cols_; }

  std::size_t index(int row, int col) const {
    assert(row >= 0 && row < rows_ && col >= 0 && col < cols_);
    return static_cast<std::size_t>(row) * cols_ + col;
  }

  bool test(std::size_t ci, PatternId id) const {
    return (bits_[ci * words_ + id / 64] >> (id % 64)) & 1u;
  }

  void clear(std::size_t ci, PatternId id) {
    std::uint64_t& word = bits_[ci * words_ + id / 64];
    const std::uint64_t bit = std::uint64_t{1} << (id % 64);
    assert(word & bit);
    word &= ~bit;
    --counts_[ci];
  }

  void set_single(std::size_t ci, PatternId id) {
    for (std::size_t w = 0; w < words_; ++w) bits_[ci * words_ + w] = 0;
    bits_[ci * words_ + id / 64] = std::uint64_t{1} << (id % 64);
    counts_[ci] = 1;
  }

  template <typename Fn>
  void for_each_candidate(std::size_t ci, Fn&& fn) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[ci * words_ + w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(static_cast<PatternId>(w * 64 + bit));
        word &= word - 1;
      }
    }
  }

  void build_rule_masks() {
    if (pattern_count_ > kRuleMaskPatternLimit) return;
    rule_masks_.assign(4 * pattern_count_ * words_, 0);
    for (PatternId id = 0; id < pattern_count_; ++id) {
      for (Direction d : kAllDirections) {
        std::uint64_t* mask = rule_mask(id, d);
        for (PatternId other : model_->rules.at(id, d)) {
          mask[other / 64] |= std::uint64_t{1} << (other % 64);
        }
      }
    }
  }

  std::uint64_t* rule_mask(PatternId id, Direction d) {
    return rule_masks_.data() +
           (static_cast<std::size_t>(d) * pattern_count_ + id) * words_;
  }
  const std::uint64_t* rule_mask(PatternId id, Direction d) const {
    return rule_masks_.data() +
           (static_cast<std::size_t>(d) * pattern_count_ + id) * words_;
  }

  /// Does candidate `id` (sitting in the neighbor) still have any
  /// supporting partner inside cell `ci`'s domain? `toward` points from
  /// the neighbor back at `ci`.
  bool supported(PatternId id, Direction toward, std::size_t ci) const {
    if (!rule_masks_.empty()) {
      const std::uint64_t* mask = rule_mask(id, toward);
      const std::uint64_t* dom = bits_.data() + ci * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        if (mask[w] & dom[w]) return true;
      }
      return false;
    }
    for (PatternId partner : model_->rules.at(id, toward)) {
      if (test(ci, partner)) return true;
    }
    return false;
  }

  void enqueue(std::size_t ci) {
    if (queued_[ci]) return;
    queued_[ci] = 1;
    queue_.push_back(ci);
  }

  PropagateResult drain_queue() {
    static constexpr int kDeltaRow[] = {0, 1, 0, -1};  // R, D, L, U
    static constexpr int kDeltaCol[] = {1, 0, -1, 0};
    while (!queue_.empty()) {
      const std::size_t ci = queue_.back();
      queue_.pop_back();
      queued_[ci] = 0;
      const int row = static_cast<int>(ci / cols_);
      const int col = static_cast<int>(ci % cols_);
      for (Direction d : kAllDirections) {
        const int nr = row + kDeltaRow[static_cast<int>(d)];
        const int nc = col + kDeltaCol[static_cast<int>(d)];
        if (nr < 0 || nr >= rows_ || nc < 0 || nc >= cols_) continue;
        const std::size_t ni = index(nr, nc);
        const Direction toward = opposite(d);
        bool changed = false;
        removals_.clear();
        for_each_candidate(ni, [&](PatternId id) {
          if (!supported(id, toward, ci)) removals_.push_back(id);
        });
        for (PatternId id : removals_) {
          clear(ni, id);
          changed = true;
        }
        if (counts_[ni] == 0) {
          queue_.clear();
          std::fill(queued_.begin(), queued_.end(), 0);
          return PropagateResult::kContradiction;
        }
        if (changed) enqueue(ni);
      }
    }
    return PropagateResult::kOk;
  }

  const Model* model_;
  int rows_;
  int cols_;
  std::size_t pattern_count_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> rule_masks_;  // empty => scan fallback
  std::vector<std::size_t> queue_;
  std::vector<std::uint8_t> queued_;
  std::vector<PatternId> removals_;
  std::mt19937_64 rng_;
};

}  // namespace wfct
