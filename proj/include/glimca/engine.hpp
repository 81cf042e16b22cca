#pragma once

#include <cstdint>
#include <vector>

#include "glimca/configuration.hpp"
#include "glimca/rule.hpp"

namespace glimca {

/// Word w placed at coordinate `position`: the set [w]_position.
struct Cylinder {
  Word word;
  std::int64_t position = 0;
};

/// Rows f^t(x) restricted to [first, last] for t = 0..steps.
struct SpacetimeDiagram {
  Alphabet alphabet;
  std::int64_t first = 0;
  std::int64_t last = 0;
  std::vector<Word> rows;
  /// determined[t][j]: cell first+j of row t does not depend on any
  /// unspecified cell of the initial description. Undetermined cells hold 0.
  std::vector<std::vector<char>> determined;

  std::size_t width() const { return static_cast<std::size_t>(last - first + 1); }
};

/// One application of the global map.
Configuration apply_step(const LocalRule& rule, const Configuration& config);

/// Image of a cyclic word under the rule (cell i sees cells i-r..i+r mod p).
Word apply_cyclic(const LocalRule& rule, const Word& word);

/// Applies the rule to every full window of `word`; result has length
/// |word| - 2r (empty when too short).
Word apply_block(const LocalRule& rule, const Word& word);

SpacetimeDiagram run(const LocalRule& rule, const Configuration& config, int steps,
                     std::int64_t first, std::int64_t last);

/// Evolution of a partial description: only the cylinder's cells are
/// specified, so row t is determined on the shrinking light cone.
SpacetimeDiagram run(const LocalRule& rule, const Cylinder& cylinder, int steps,
                     std::int64_t first, std::int64_t last);

/// The word f^t(x)[rt, |w| - rt) shared by every x in [w]_0.
Word determined_image(const LocalRule& rule, const Word& word, int steps);

void check_alphabet(const LocalRule& rule, const Alphabet& alphabet);

}  // namespace glimca
