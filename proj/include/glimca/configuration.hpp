#pragma once

#include <cstdint>
#include <string>

#include "glimca/alphabet.hpp"

namespace glimca {

/// Finitely described point of A^Z: either a cyclic (spatially periodic)
/// word, or a center word at a fixed coordinate between two periodic
/// backgrounds.
///
/// Two-sided layout: the center occupies [offset, offset + |center|); cell
/// i < offset is left[(i - offset) mod |left|]; cell i >= offset + |center|
/// is right[(i - offset - |center|) mod |right|].
class Configuration {
 public:
  static Configuration cyclic(Word word);
  static Configuration two_sided(Word left, Word center, std::int64_t offset, Word right);

  bool is_cyclic() const { return cyclic_; }
  /// Cyclic period, or the center word of a two-sided configuration.
  const Word& word() const { return center_; }
  const Word& center() const { return center_; }
  const Word& left() const { return left_; }
  const Word& right() const { return right_; }
  std::int64_t offset() const { return offset_; }
  std::int64_t center_end() const { return offset_ + static_cast<std::int64_t>(center_.size()); }
  std::size_t period() const { return center_.size(); }

  Symbol at(std::int64_t i) const;
  Word window(std::int64_t a, std::int64_t b) const;  ///< cells [a, b], inclusive

  /// Cyclic rotation: result cell i is this cell i + k.
  Configuration rotated(std::int64_t k) const;

  /// Absorbs center cells that continue a background; never changes at(i).
  Configuration normalized() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Configuration() = default;

  bool cyclic_ = true;
  Word left_;
  Word center_;
  Word right_;
  std::int64_t offset_ = 0;
};

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace glimca
