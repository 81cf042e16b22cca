#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "glimca/engine.hpp"
#include "glimca/rule.hpp"
#include "glimca/sft.hpp"

namespace glimca {

/// Finite stand-ins for the unbounded quantifiers. "Infinitely many t"
/// becomes "at least K hits up to T_max".
struct Bounds {
  std::size_t U = 3;          ///< context length
  int T_max = 64;             ///< time horizon
  std::size_t K = 8;          ///< hit threshold / terminal window length
  std::size_t branching = 4096;  ///< max contexts or extension candidates
  std::size_t N = 1000;       ///< samples
  int T0 = 32;                ///< burn-in
  std::size_t n = 8;          ///< window length
  std::size_t period = 256;   ///< sampled configuration period
  std::uint64_t seed = 1;
  unsigned threads = 1;
  int m_max = 4;              ///< classifier horizon

  /// Throws PreconditionError unless all positive, K <= T_max, T0 <= T_max.
  void validate() const;
  std::string describe() const;
};

struct Certificate {
  enum class Kind { Forcing, EnablingSupported, EnablingRefuted, Classification };
  Kind kind = Kind::Classification;
  std::vector<std::string> witness;
  int horizon = 0;
  bool exact = true;
  std::optional<std::uint64_t> seed;  ///< set when contexts were sampled

  std::string kind_name() const;
  /// One line per witness entry plus a header with horizon and exactness.
  std::vector<std::string> lines() const;
};

struct EnablingResult {
  enum class Verdict { Supported, RefutedAtBound, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::size_t contexts = 0;
  /// Refuting (u, w), or for Inconclusive the first pair below K hits.
  std::optional<std::pair<Word, Word>> witness;
  std::vector<int> witness_hits;  ///< times t <= T_max with a hit, for the witness
  Certificate certificate;
};
std::string verdict_name(EnablingResult::Verdict v);

/// Whether v (at v.position) keeps reaching [s]_0 under every context pair
/// (u, w) with |u|, |w| <= U. Contexts are enumerated when their count fits
/// `branching`, otherwise sampled from `seed` and flagged inexact.
EnablingResult check_enables(const LocalRule& rule, const Cylinder& v, const Word& s, const Bounds& bounds);

struct ForcingResult {
  bool found = false;
  Cylinder cylinder;
  int T = 0;
  std::optional<Word> unkillable;  ///< first forbidden word no extension removed
  Certificate certificate;
};

/// Greedy extension of `seed` until every n-word outside the oracle is
/// absent from [0, n) at all t in [T, T_max]. Forbidden words are handled
/// in lexicographic order; extensions (a, b) breadth-first by |a| + |b|.
ForcingResult search_forcing_word(const LocalRule& rule, const Cylinder& seed, std::size_t n, const Bounds& bounds,
                                  const LanguageSample& oracle);

/// n-windows seen in N uniformly random cyclic configurations during
/// [T0, T_max], factor-closed. Sample i draws from seed_seq{seed, i}.
LanguageSample estimate_generic_language(const LocalRule& rule, const Bounds& bounds);

struct Neighborhood {
  int lo = 0, hi = 0;
  bool empty = false;  ///< constant map
  std::string str() const;
  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;
};

struct Classification {
  enum class Kind { Identity, Shift, EventuallyPeriodic, EventuallyOblique, Other };
  Kind kind = Kind::Other;
  int shift = 0;                           ///< k for Shift
  std::optional<std::pair<int, int>> periodic;  ///< (k, p) with f^{k+p} = f^k
  std::optional<int> oblique_power;        ///< smallest m with a one-sided neighborhood
  std::vector<Neighborhood> neighborhoods; ///< of f^m on X, m = 1..m_max
  int horizon = 0;
  Certificate certificate;

  std::string label() const;  ///< "identity", "shift(1)", ...
};
std::string classification_kind_name(Classification::Kind k);

/// Exact on the words of the SFT: dependence of f^m's output on each cell
/// of L_{2rm+1}(X), m <= m_max.
Classification restriction_classifier(const LocalRule& rule, const Sft& sft, int m_max);

struct ReportLine {
  std::string check;
  std::string result;
  std::string consequence;  ///< empty when nothing follows
  bool excludes = false;
  std::string horizon;      ///< "exact" or the bounded horizon / seed
};

struct AnalysisReport {
  std::vector<ReportLine> lines;
  bool excluded() const;
  std::vector<std::string> text() const;
  std::string csv() const;
};

using SubshiftInput = std::variant<Sft, LanguageSample>;

/// Aggregates the hypothesis checks on a subshift (exact for an SFT; via
/// its order-n approximations for a sample) and, with a rule, the
/// restriction classifier and component permutation.
AnalysisReport realizability_report(const SubshiftInput& input, const LocalRule* rule, const Bounds& bounds);

}  // namespace glimca
