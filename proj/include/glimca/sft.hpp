#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glimca/rule.hpp"

namespace glimca {

/// Finite truncation of a factor-closed language: words per length up to
/// max_length.
struct LanguageSample {
  struct Sampled {
    std::string params;
    std::uint64_t seed = 0;
  };

  Alphabet alphabet;
  std::map<std::size_t, std::set<Word>> words;
  std::size_t max_length = 0;
  std::optional<Sampled> sampled;  ///< unset: exact

  const std::set<Word>& at(std::size_t length) const;
  bool is_factor_closed() const;

  /// Factor closure of `seeds` (each seed's subwords of every length <= max_length).
  static LanguageSample closure(Alphabet alphabet, const std::set<Word>& seeds, std::size_t max_length);
};

/// Shift of finite type given by its allowed window-words, with the de Bruijn
/// graph on (window-1)-words and its pruned (bi-infinitely extendable) part.
class Sft {
 public:
  static Sft from_forbidden(Alphabet alphabet, const std::vector<Word>& forbidden);
  static Sft from_allowed(Alphabet alphabet, std::size_t window, std::vector<Word> allowed);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t window() const { return window_; }
  const std::vector<Word>& allowed() const { return allowed_; }
  /// Allowed words whose edge survives pruning, in sorted order.
  std::vector<Word> pruned_words() const;
  bool empty() const { return pruned_count_ == 0; }

  /// The k-words of the subshift.
  std::set<Word> language(std::size_t k) const;

  // Pruned de Bruijn graph: vertices are (window-1)-words.
  struct Edge {
    int from;
    int to;
    std::size_t word;  ///< index into allowed()
  };
  const std::vector<Word>& vertices() const { return vertices_; }
  const std::vector<Edge>& pruned_edges() const { return pruned_; }

 private:
  Sft() = default;
  void build();

  Alphabet alphabet_;
  std::size_t window_ = 1;
  std::vector<Word> allowed_;
  std::vector<Word> vertices_;
  std::vector<Edge> pruned_;
  std::size_t pruned_count_ = 0;
};

/// Strongly connected components of the pruned graph that carry at least one
/// edge, each with the gcd of its cycle lengths.
struct IrreducibleComponent {
  std::vector<int> vertices;
  std::size_t period = 0;
};

Sft sft_approximation(const LanguageSample& sample, std::size_t n);

bool is_transitive(const Sft& sft);
bool is_mixing(const Sft& sft);
std::vector<IrreducibleComponent> irreducible_components(const Sft& sft);
/// Per irreducible component, the gcd of cycle lengths.
std::vector<std::size_t> sigma_period(const Sft& sft);

struct ChainTransitivity {
  bool holds = false;
  std::optional<std::size_t> first_failure;  ///< smallest failing n
  std::size_t horizon = 0;
};
ChainTransitivity is_chain_transitive(const LanguageSample& sample, std::size_t horizon);
/// Exact chain transitivity of an SFT (approximations at or beyond the
/// window coincide with the SFT itself).
ChainTransitivity is_chain_transitive(const Sft& sft);

/// Partition of the n-words into sigma+- chain classes, with one SFT per class.
struct ComponentPartition {
  std::size_t width = 0;
  std::vector<std::vector<Word>> classes;  ///< each sorted; classes ordered by first word
  std::vector<Sft> component_sfts;

  /// Index of the class holding `w`, if any.
  std::optional<std::size_t> class_of(const Word& w) const;
};
ComponentPartition chain_components(const Sft& sft, std::size_t n);

/// SFT cover of f(X) at window n whose n-language equals that of f(X).
Sft block_image(const LocalRule& rule, const Sft& sft, std::size_t n);

struct ComponentPermutation {
  ComponentPartition partition;
  /// image[i] = class containing f(X_i), or nullopt when f(X_i) straddles classes.
  std::vector<std::optional<std::size_t>> image;
  bool invariant = false;    ///< every image lies in one class
  bool permutation = false;
  bool cyclic = false;       ///< a single cycle through all classes
  std::string note;
};
ComponentPermutation component_permutation(const LocalRule& rule, const Sft& sft, std::size_t n);

struct ObstructionVerdict {
  enum class Kind { Obstructed, Clear, Inconclusive } kind = Kind::Clear;
  std::size_t period = 1;                    ///< p when obstructed
  std::vector<std::size_t> component_levels; ///< level modulus per chain component
};
ObstructionVerdict periodic_factor_obstruction(const Sft& sft);

/// Re-encodes a word between alphabets by symbol name.
Word translate(const Word& w, const Alphabet& from, const Alphabet& to);

}  // namespace glimca
