// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the data types.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "glimca/alphabet.hpp"
#include "glimca/rule.hpp"

namespace oracle {

using glimca::Symbol;
using glimca::Word;

/// Local rule given as a plain table, most significant cell first.
struct Table {
  std::size_t alphabet;
  int radius;
  std::vector<Symbol> out;

  Symbol at(const Word& x, std::size_t center) const {
    std::uint64_t code = 0;
    for (int d = -radius; d <= radius; ++d) code = code * alphabet + x[center + d];
    return out[code];
  }
};

inline Table random_table(std::size_t alphabet, int radius, std::mt19937_64& gen) {
  std::uint64_t size = 1;
  for (int i = 0; i < 2 * radius + 1; ++i) size *= alphabet;
  Table t{alphabet, radius, std::vector<Symbol>(size)};
  std::uniform_int_distribution<Symbol> d(0, static_cast<Symbol>(alphabet - 1));
  for (auto& s : t.out) s = d(gen);
  return t;
}

inline glimca::Alphabet digits(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return glimca::Alphabet(names);
}

inline glimca::LocalRule to_rule(const Table& t) {
  return glimca::LocalRule::from_table(digits(t.alphabet), t.radius, t.out);
}

/// One step on a finite word; the result is 2r shorter.
inline Word step(const Table& t, const Word& x) {
  Word y;
  for (std::size_t i = static_cast<std::size_t>(t.radius); i + t.radius < x.size(); ++i) y.push_back(t.at(x, i));
  return y;
}

inline Word steps(const Table& t, Word x, int n) {
  for (int i = 0; i < n; ++i) x = step(t, x);
  return x;
}

/// Calls f on every word of the given length.
inline void for_each_word(std::size_t alphabet, std::size_t length, const std::function<void(const Word&)>& f) {
  Word w(length, 0);
  for (;;) {
    f(w);
    std::size_t i = length;
    while (i > 0 && w[i - 1] + 1 == alphabet) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

/// { f^t(x)[first, last] : x agrees with `fixed` on [pos, pos+|fixed|) }.
inline std::set<Word> cylinder_image(const Table& t, const Word& fixed, std::int64_t pos, int time, std::int64_t first,
                                     std::int64_t last) {
  const std::int64_t lo = std::min(first - t.radius * time, pos);
  const std::int64_t hi = std::max(last + t.radius * time, pos + static_cast<std::int64_t>(fixed.size()) - 1);
  std::vector<std::int64_t> free_cells;
  for (std::int64_t i = lo; i <= hi; ++i)
    if (i < pos || i >= pos + static_cast<std::int64_t>(fixed.size())) free_cells.push_back(i);
  std::set<Word> out;
  for_each_word(t.alphabet, free_cells.size(), [&](const Word& fill) {
    Word x(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t k = 0; k < fixed.size(); ++k) x[static_cast<std::size_t>(pos - lo) + k] = fixed[k];
    for (std::size_t k = 0; k < free_cells.size(); ++k) x[static_cast<std::size_t>(free_cells[k] - lo)] = fill[k];
    // After `time` steps the word covers [lo + r*time, hi - r*time].
    const Word y = steps(t, x, time);
    const std::int64_t base = lo + t.radius * time;
    out.insert(Word(y.begin() + (first - base), y.begin() + (last - base + 1)));
  });
  return out;
}

/// Bi-infinite points of an SFT that are periodic with period <= max_period,
/// given by its allowed window-words; returns their n-windows.
inline std::set<Word> periodic_language(std::size_t alphabet, std::size_t window, const std::set<Word>& allowed,
                                        std::size_t max_period, std::size_t n) {
  std::set<Word> out;
  for (std::size_t p = 1; p <= max_period; ++p)
    for_each_word(alphabet, p, [&](const Word& w) {
      auto cell = [&](std::size_t i) { return w[i % p]; };
      for (std::size_t i = 0; i < p; ++i) {
        Word f;
        for (std::size_t j = 0; j < window; ++j) f.push_back(cell(i + j));
        if (!allowed.count(f)) return;
      }
      for (std::size_t i = 0; i < p; ++i) {
        Word f;
        for (std::size_t j = 0; j < n; ++j) f.push_back(cell(i + j));
        out.insert(f);
      }
    });
  return out;
}

/// Cycle lengths (up to max_len) of the graph on (window-1)-words whose
/// edges are allowed words: length L is present iff some periodic point of
/// least period dividing L exists. Gcd over all found lengths.
inline std::size_t cycle_gcd(std::size_t alphabet, std::size_t window, const std::set<Word>& allowed,
                             std::size_t max_len) {
  std::size_t g = 0;
  for (std::size_t p = 1; p <= max_len; ++p) {
    bool found = false;
    for_each_word(alphabet, p, [&](const Word& w) {
      if (found) return;
      for (std::size_t i = 0; i < p; ++i) {
        Word f;
        for (std::size_t j = 0; j < window; ++j) f.push_back(w[(i + j) % p]);
        if (!allowed.count(f)) return;
      }
      found = true;
    });
    if (found) g = std::gcd(g, p);
  }
  return g;
}

}  // namespace oracle
