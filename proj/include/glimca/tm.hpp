#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glimca/alphabet.hpp"

namespace glimca {

/// Two one-way-infinite tapes under a single head: a read-only tape over
/// gamma_a (letters plus '#' and '$') and a read-write tape over gamma plus
/// the blank. Read-write symbols are indexed 0..|gamma|-1; the blank is
/// index |gamma|.
class TuringMachine {
 public:
  enum class Move { Left, Right, Stay };
  struct Action {
    int state = 0;
    int write = 0;
    Move move = Move::Stay;
  };

  static constexpr const char* kBlankName = "_";

  TuringMachine(std::vector<std::string> states, int initial, int final1, int final2,
                std::vector<std::string> gamma, Alphabet gamma_a);

  std::size_t state_count() const { return states_.size(); }
  const std::string& state_name(int q) const { return states_.at(q); }
  int state_index(std::string_view name) const;
  int initial() const { return initial_; }
  int final1() const { return final1_; }
  int final2() const { return final2_; }
  bool is_final(int q) const { return q == final1_ || q == final2_; }

  const std::vector<std::string>& gamma() const { return gamma_; }
  std::size_t tape_symbols() const { return gamma_.size() + 1; }  ///< gamma plus blank
  int blank() const { return static_cast<int>(gamma_.size()); }
  int gamma_index(std::string_view name) const;  ///< accepts kBlankName
  std::string tape_name(int g) const { return g == blank() ? kBlankName : gamma_.at(g); }
  const Alphabet& gamma_a() const { return gamma_a_; }
  Symbol filler() const { return gamma_a_.index("#"); }

  void set(int state, Symbol read_only, int read_write, Action action);
  const std::optional<Action>& action(int state, Symbol read_only, int read_write) const;

  /// Throws PreconditionError unless every non-final (state, ro, rw) triple
  /// has an action and final states have none.
  void validate() const;

 private:
  std::size_t slot(int state, Symbol ro, int rw) const;

  std::vector<std::string> states_;
  int initial_, final1_, final2_;
  std::vector<std::string> gamma_;
  Alphabet gamma_a_;
  std::vector<std::optional<Action>> delta_;
};

struct TmTraceStep {
  int state;
  std::int64_t head;
  int tape_under_head;
  friend bool operator==(const TmTraceStep&, const TmTraceStep&) = default;
};

struct TmRun {
  enum class Outcome { HaltedFinal1, HaltedFinal2, LeftEdgeFault, Timeout };
  Outcome outcome = Outcome::Timeout;
  int state = 0;
  std::int64_t head = 0;
  std::uint64_t steps = 0;
  Word read_only;              ///< visited prefix of the read-only tape
  std::vector<int> read_write; ///< visited prefix of the read-write tape
  std::vector<TmTraceStep> trace;  ///< configuration at step 0..steps
};

std::string outcome_name(TmRun::Outcome o);

/// Runs from the initial state at cell 0. Cells past the given prefixes read
/// as blank (read-write) and '#' (read-only).
TmRun simulate_tm(const TuringMachine& machine, const Word& read_only, const std::vector<int>& read_write,
                  std::uint64_t max_steps, bool record_trace = true);

/// psi(w, m, m', k) over bounded ranges, or a constant.
class PredicateProgram {
 public:
  enum class Kind { AlwaysTrue, AlwaysFalse, Table };
  using Fn = std::function<bool(const Word&, std::size_t, std::size_t, std::size_t)>;

  static PredicateProgram always_true(Alphabet letters);
  static PredicateProgram always_false(Alphabet letters);
  /// Tabulates `fn` for |w| <= max_word, m <= max_m, m' <= max_mprime,
  /// k <= max_k.
  static PredicateProgram table(Alphabet letters, std::size_t max_word, std::size_t max_m,
                                std::size_t max_mprime, std::size_t max_k, const Fn& fn);

  Kind kind() const { return kind_; }
  const Alphabet& letters() const { return letters_; }
  std::size_t max_word() const { return max_word_; }
  std::size_t max_m() const { return max_m_; }
  std::size_t max_mprime() const { return max_mprime_; }
  std::size_t max_k() const { return max_k_; }
  bool in_range(const Word& w, std::size_t m, std::size_t mp, std::size_t k) const;
  /// Throws PreconditionError outside the declared ranges.
  bool operator()(const Word& w, std::size_t m, std::size_t mp, std::size_t k) const;

 private:
  Kind kind_ = Kind::AlwaysTrue;
  Alphabet letters_;
  std::size_t max_word_ = 0, max_m_ = 0, max_mprime_ = 0, max_k_ = 0;
  std::vector<char> values_;
  std::size_t index(const Word& w, std::size_t m, std::size_t mp, std::size_t k) const;
};

/// The enumeration machine: checks "#w#$^m#" / "1^(3n+5)_", walks the n
/// pairs (m', k) from (0, 0), rejects in final1 when the last pair has
/// k > 0, otherwise zeroes the |w|+2 leftmost read-write cells, returns to
/// cell 0 and halts in final2.
///
/// Table predicates must cover every pair reachable for n <= max_n; the
/// machine rejects when its input leaves the table's word or m range.
TuringMachine build_sigma3_machine(const PredicateProgram& psi, std::size_t max_n = 8);

/// M(w, m, n) evaluated directly, without a machine.
bool sigma3_reference(const PredicateProgram& psi, const Word& w, std::size_t m, std::size_t n);

/// Tapes "#w#$^m#" and "1^(3n+5)_" for the machine built over `letters`.
Word sigma3_read_only_tape(const TuringMachine& machine, const Word& w_over_gamma_a, std::size_t m);
std::vector<int> sigma3_read_write_tape(const TuringMachine& machine, std::size_t n);

}  // namespace glimca
