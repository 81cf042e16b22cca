#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace glimca {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Ordered set of printable symbol names with a stable index <-> name map.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  bool contains(std::string_view name) const;
  Symbol index(std::string_view name) const;

  /// True when every name is exactly one character, so words print and parse
  /// without separators.
  bool single_char() const { return single_char_; }

  /// Parses a word. Tokens may be separated by commas or whitespace; each
  /// token is split greedily by longest matching name.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w, std::string_view sep = "") const;
  /// Concise form: plain concatenation when single_char(), else comma-joined.
  std::string show(const Word& w) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
  std::size_t max_len_ = 0;
  bool single_char_ = true;
};

/// Index of a word as a base-|A| number, most significant symbol first.
std::uint64_t word_code(const Word& w, std::size_t base);
Word word_from_code(std::uint64_t code, std::size_t length, std::size_t base);
/// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

}  // namespace glimca
