#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glimca/alphabet.hpp"
#include "glimca/configuration.hpp"
#include "glimca/rule.hpp"
#include "glimca/tm.hpp"

namespace glimca {

/// First-track kinds. The seven background/signal kinds come first and
/// occupy first-track indices 0..6 in this order.
enum class Kind : std::uint8_t { B, E, S1, S2, S2p, S3, Turnstile, Head, Right, Left };
inline constexpr std::size_t kKindCount = 10;
std::string kind_name(Kind k);

/// Symbols of the compiled CA: a first track over the signal kinds and
/// (state | <- | ->) x (tape symbol incl. blank), times a read-only track over
/// the machine's gamma_a. Symbol index = first * |gamma_a| + read_only.
///
/// Names are "<first>/<read-only>", e.g. "B/#", "q0:1/a", "<:_/#", "|-/#".
class SignalAlphabet {
 public:
  explicit SignalAlphabet(std::shared_ptr<const TuringMachine> machine);

  const TuringMachine& machine() const { return *machine_; }
  std::shared_ptr<const TuringMachine> machine_ptr() const { return machine_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return alphabet_.size(); }
  std::size_t first_track_size() const { return first_size_; }
  std::size_t read_only_size() const { return machine_->gamma_a().size(); }

  Kind kind(Symbol s) const { return kinds_[s]; }
  Symbol read_only(Symbol s) const { return s % read_only_size(); }
  std::size_t first_track(Symbol s) const { return s / read_only_size(); }
  int state(Symbol s) const;  ///< head symbols only
  int tape(Symbol s) const;   ///< head and arrow symbols only

  Symbol signal(Kind k, Symbol ro) const;  ///< B, E, S1, S2, S2p, S3, Turnstile
  Symbol head(int state, int tape, Symbol ro) const;
  Symbol left(int tape, Symbol ro) const;
  Symbol right(int tape, Symbol ro) const;
  Symbol with_read_only(Symbol s, Symbol ro) const { return static_cast<Symbol>(first_track(s) * read_only_size() + ro); }

 private:
  Symbol compose(std::size_t first, Symbol ro) const;

  std::shared_ptr<const TuringMachine> machine_;
  std::size_t first_size_ = 0;
  Alphabet alphabet_;
  std::vector<Kind> kinds_;
};

/// The radius-3 rule, split in two layers: `decide` looks only at the seven
/// kinds and either settles the target or delegates to the machine layer,
/// which reads the full symbols at -1, 0, +1.
class SignalRule final : public RuleProgram {
 public:
  enum class Out : std::uint8_t { B, E, S1, S2, S2p, S3, Turnstile, HeadInit, LeftOne, LeftBlank, Machine };

  explicit SignalRule(std::shared_ptr<const SignalAlphabet> alphabet) : sa_(std::move(alphabet)) {}

  static Out decide(const std::array<Kind, 7>& kinds);
  /// Machine layer; `center_kind` is one of Turnstile, Head, Right, Left.
  Symbol machine_step(Symbol left, Symbol center, Symbol right) const;

  Symbol apply(std::span<const Symbol> neighborhood) const override;
  std::string kind() const override { return "signal-ca"; }
  const SignalAlphabet& signal_alphabet() const { return *sa_; }

 private:
  std::shared_ptr<const SignalAlphabet> sa_;
};

LocalRule compile_signal_ca(std::shared_ptr<const TuringMachine> machine);
/// The signal rule behind a compiled LocalRule, or nullptr.
const SignalRule* as_signal_rule(const LocalRule& rule);

/// (q_f2 <-^{|w|+1}, 0^{|w|+2}, #w#); `w` is over the letters of gamma_a.
Word w_hat(const SignalAlphabet& sa, const Word& w);

/// (E^{|w|+m+3}, #w#$^m#).
Word w_tilde(const SignalAlphabet& sa, const Word& w, std::size_t m);

/// Left background (B,#), right background (E,#), u w~ v with w~ at 0,
/// S1 S2 E at [-n+2, -n+4] and S2 at -2n+2. Requires n > |u| + 4.
Configuration build_proof_config(const SignalAlphabet& sa, const Word& w, std::size_t m, std::size_t n,
                                 const Word& u, const Word& v);

/// The same signal placement with u = v = empty and any n >= 1. For n <= 4
/// the signals are written over the first track of w~'s leading cells.
Configuration initialization_config(const SignalAlphabet& sa, const Word& w, std::size_t m, std::size_t n);

struct ExpectedCell {
  std::int64_t coordinate;
  Kind kind;
  int state = -1;  ///< head state, -1 = unchecked
  int tape = -1;   ///< tape symbol, -1 = unchecked
};

struct ScheduledEvent {
  std::int64_t time;
  std::int64_t coordinate;
  std::string label;
  std::vector<ExpectedCell> pattern;
};

struct EventSchedule {
  std::vector<ScheduledEvent> events;
};

/// Collision times: S1 x S2 at (n, 2) leaving |- (q0,1) (<-,1) S3 on
/// [-1, 2]; S3 x S2 at (2n+1, 3n+5) leaving S2'.
EventSchedule expected_events(const TuringMachine& machine, std::size_t n);

struct EventCheck {
  bool ok = true;
  std::vector<std::string> mismatches;
};

/// Runs the rule and compares each scheduled event with the diagram.
EventCheck verify_events(const LocalRule& rule, const SignalAlphabet& sa, Configuration x,
                         const EventSchedule& schedule);

/// Step-by-step comparison of the compiled head with simulate_tm, started
/// from initialization_config(w, m, n).
struct FidelityReport {
  bool ok = true;
  std::string first_mismatch;
  std::uint64_t compared_steps = 0;
  bool tape_initialized = false;  ///< cells [0, 3n+5] read 1^{3n+5} blank once the segment is formed
  TmRun machine_run;
  std::optional<std::int64_t> w_hat_time;  ///< first CA time with w_hat at the origin
};

FidelityReport check_fidelity(const LocalRule& rule, const SignalAlphabet& sa, const Word& w, std::size_t m,
                              std::size_t n, std::uint64_t max_machine_steps);

/// First time in [0, horizon] at which w_hat(w) sits at cells [0, |w|+1].
std::optional<std::int64_t> first_w_hat(const LocalRule& rule, const SignalAlphabet& sa, Configuration x,
                                        const Word& w, std::int64_t horizon);

}  // namespace glimca
