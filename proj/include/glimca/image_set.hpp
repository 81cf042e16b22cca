#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "glimca/engine.hpp"

namespace glimca {

/// Finite set of equal-length words as a layered, minimal DFA. Layer j reads
/// the symbol at relative position j. Every state is reachable and
/// co-reachable, so nonemptiness questions reduce to path existence.
class WordSetAutomaton {
 public:
  /// Cells with a value are fixed, the rest range over the alphabet.
  static WordSetAutomaton from_constraints(const std::vector<std::optional<Symbol>>& cells,
                                           std::size_t alphabet_size);

  std::size_t length() const { return counts_.empty() ? 0 : counts_.size() - 1; }
  std::size_t state_count() const;
  bool empty() const { return empty_; }

  /// Set of block-map images {F(y) : y in this set}; length shrinks by 2r.
  /// Exact; throws BudgetError when the subset construction outgrows
  /// `state_budget`.
  WordSetAutomaton image(const LocalRule& rule, std::uint64_t state_budget) const;

  /// Some word of the set carries `pattern` at relative position `at`.
  bool admits(const Word& pattern, std::size_t at) const;

  /// All words; throws BudgetError when more than `limit` exist.
  std::set<Word> words(std::uint64_t limit) const;

 private:
  void minimize();

  std::size_t alphabet_ = 0;
  bool empty_ = false;
  std::vector<std::size_t> counts_;                 // states per layer, layers 0..L
  std::vector<std::vector<std::int32_t>> next_;     // per layer: counts_[j] * alphabet_ entries
};

/// The exact set { f^t(x)[first, last] : x in [cyl] }.
/// Throws BudgetError ("exactness unavailable at this horizon") instead of
/// approximating.
std::set<Word> cylinder_image_set(const LocalRule& rule, const Cylinder& cyl, int steps,
                                  std::int64_t first, std::int64_t last);

/// hits[t] == (f^t([cyl]) intersects [pattern]_at) for t = 0..horizon,
/// each decided exactly.
std::vector<bool> cylinder_hits(const LocalRule& rule, const Cylinder& cyl, const Word& pattern,
                                std::int64_t at, int horizon);

}  // namespace glimca
