#include "glimca/signal_ca.hpp"

#include <sstream>

#include "glimca/budget.hpp"
#include "glimca/engine.hpp"
#include "glimca/error.hpp"

namespace glimca {

namespace {

constexpr std::size_t kSignalKinds = 7;
const char* const kSignalNames[kSignalKinds] = {"B", "E", "S1", "S2", "S2'", "S3", "|-"};

bool moving(Kind k) {
  return k == Kind::B || k == Kind::E || k == Kind::S1 || k == Kind::S2 || k == Kind::S2p || k == Kind::S3;
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Head: return "head";
    case Kind::Right: return "->";
    case Kind::Left: return "<-";
    default: return kSignalNames[static_cast<int>(k)];
  }
}

SignalAlphabet::SignalAlphabet(std::shared_ptr<const TuringMachine> machine) : machine_(std::move(machine)) {
  const TuringMachine& m = *machine_;
  const std::size_t g = m.tape_symbols();
  first_size_ = kSignalKinds + (m.state_count() + 2) * g;
  const std::size_t total = first_size_ * m.gamma_a().size();
  if (total > kDenseTableCap) throw BudgetError("signal alphabet exceeds the symbol cap");

  std::vector<std::string> first(first_size_);
  std::vector<Kind> first_kind(first_size_);
  for (std::size_t i = 0; i < kSignalKinds; ++i) {
    first[i] = kSignalNames[i];
    first_kind[i] = static_cast<Kind>(i);
  }
  for (std::size_t q = 0; q < m.state_count() + 2; ++q)
    for (std::size_t t = 0; t < g; ++t) {
      const std::size_t idx = kSignalKinds + q * g + t;
      const std::string tape = m.tape_name(static_cast<int>(t));
      if (q < m.state_count()) {
        first[idx] = m.state_name(static_cast<int>(q)) + ":" + tape;
        first_kind[idx] = Kind::Head;
      } else if (q == m.state_count()) {
        first[idx] = "<:" + tape;
        first_kind[idx] = Kind::Left;
      } else {
        first[idx] = ">:" + tape;
        first_kind[idx] = Kind::Right;
      }
    }
  std::vector<std::string> names;
  names.reserve(total);
  kinds_.reserve(total);
  for (std::size_t f = 0; f < first_size_; ++f)
    for (std::size_t a = 0; a < m.gamma_a().size(); ++a) {
      names.push_back(first[f] + "/" + m.gamma_a().name(static_cast<Symbol>(a)));
      kinds_.push_back(first_kind[f]);
    }
  alphabet_ = Alphabet(std::move(names));
}

Symbol SignalAlphabet::compose(std::size_t first, Symbol ro) const {
  if (ro >= read_only_size()) throw PreconditionError("read-only symbol out of range");
  return static_cast<Symbol>(first * read_only_size() + ro);
}

int SignalAlphabet::state(Symbol s) const {
  if (kind(s) != Kind::Head) throw PreconditionError("not a head symbol");
  return static_cast<int>((first_track(s) - kSignalKinds) / machine_->tape_symbols());
}

int SignalAlphabet::tape(Symbol s) const {
  const Kind k = kind(s);
  if (k != Kind::Head && k != Kind::Left && k != Kind::Right) throw PreconditionError("no tape symbol on this cell");
  return static_cast<int>((first_track(s) - kSignalKinds) % machine_->tape_symbols());
}

Symbol SignalAlphabet::signal(Kind k, Symbol ro) const {
  if (static_cast<std::size_t>(k) >= kSignalKinds) throw PreconditionError("not a signal kind");
  return compose(static_cast<std::size_t>(k), ro);
}

Symbol SignalAlphabet::head(int state, int tape, Symbol ro) const {
  return compose(kSignalKinds + static_cast<std::size_t>(state) * machine_->tape_symbols() + tape, ro);
}

Symbol SignalAlphabet::left(int tape, Symbol ro) const {
  return compose(kSignalKinds + machine_->state_count() * machine_->tape_symbols() + tape, ro);
}

Symbol SignalAlphabet::right(int tape, Symbol ro) const {
  return compose(kSignalKinds + (machine_->state_count() + 1) * machine_->tape_symbols() + tape, ro);
}

// ---------------------------------------------------------------------------

SignalRule::Out SignalRule::decide(const std::array<Kind, 7>& k) {
  auto at = [&k](int d) { return k[d + 3]; };

  if (at(-2) == Kind::E) return Out::E;

  // S2 at p, S1 at p+1: the cells p-1, p, p+1 of the four-cell pattern.
  int specials = 0;
  Out special = Out::E;
  if (at(1) == Kind::S2 && at(2) == Kind::S1) { ++specials; special = Out::Turnstile; }
  if (at(0) == Kind::S2 && at(1) == Kind::S1) { ++specials; special = Out::HeadInit; }
  if (at(-1) == Kind::S2 && at(0) == Kind::S1) { ++specials; special = Out::LeftOne; }

  const bool s1 = at(-1) == Kind::S1;
  const bool s2 = at(-2) == Kind::S2;
  const bool s2p = at(-2) == Kind::S2p;
  const bool s3 = at(-3) == Kind::S3;
  const int arrivals = s1 + s2 + s2p + s3;

  if (specials > 1) return Out::E;
  if (specials == 1) return arrivals ? Out::E : special;

  if (arrivals == 2) {
    if (s2 && s1) return Out::S3;
    if (s3 && s2) return Out::S2p;
    return Out::E;
  }
  if (arrivals > 2) return Out::E;
  if (arrivals == 1) {
    // Cells jumped over and the landing cell must hold background or signals.
    const int from = s1 ? -1 : (s3 ? -3 : -2);
    for (int d = from + 1; d <= 0; ++d)
      if (!moving(at(d))) return Out::E;
    if (s1) return Out::S1;
    if (s2) return Out::S2;
    if (s2p) return Out::S2p;
    return Out::S3;
  }

  const bool one = at(0) == Kind::S3 || at(-1) == Kind::S3 || at(-2) == Kind::S3;
  const bool blank = at(0) == Kind::S2p || at(-1) == Kind::S2p;
  if (one && blank) return Out::E;
  if (one) return Out::LeftOne;
  if (blank) return Out::LeftBlank;

  const Kind l = at(-1), c = at(0), r = at(1);
  auto left_ok = [&] { return l == Kind::Turnstile || l == Kind::Right; };
  auto right_end = [&] { return r == Kind::Left || r == Kind::S3 || r == Kind::S2p; };
  switch (c) {
    case Kind::Turnstile:
      return (r == Kind::Right || r == Kind::Head) ? Out::Machine : Out::E;
    case Kind::Right:
      return left_ok() && (r == Kind::Right || r == Kind::Head) ? Out::Machine : Out::E;
    case Kind::Head:
      return left_ok() && right_end() ? Out::Machine : Out::E;
    case Kind::Left:
      return (l == Kind::Head || l == Kind::Left) && right_end() ? Out::Machine : Out::E;
    default:
      return Out::B;  // background stays, moving signals vacate
  }
}

Symbol SignalRule::machine_step(Symbol left, Symbol center, Symbol right) const {
  const SignalAlphabet& sa = *sa_;
  const TuringMachine& m = sa.machine();
  const Symbol ro = sa.read_only(center);
  const Symbol err = sa.signal(Kind::E, ro);

  // Action of a live head cell, if `s` is one.
  auto head_action = [&](Symbol s) -> std::optional<TuringMachine::Action> {
    if (sa.kind(s) != Kind::Head) return std::nullopt;
    const int q = sa.state(s);
    if (m.is_final(q)) return std::nullopt;
    return m.action(q, sa.read_only(s), sa.tape(s));
  };

  switch (sa.kind(center)) {
    case Kind::Turnstile: {
      const auto act = head_action(right);
      if (act && act->move == TuringMachine::Move::Left) return err;
      return center;
    }
    case Kind::Right: {
      const auto act = head_action(right);
      if (act && act->move == TuringMachine::Move::Left) return sa.head(act->state, sa.tape(center), ro);
      return center;
    }
    case Kind::Left: {
      const auto act = head_action(left);
      if (act && act->move == TuringMachine::Move::Right) return sa.head(act->state, sa.tape(center), ro);
      return center;
    }
    case Kind::Head: {
      if (m.is_final(sa.state(center))) return err;
      const auto act = head_action(center);
      if (!act) return err;
      switch (act->move) {
        case TuringMachine::Move::Stay: return sa.head(act->state, act->write, ro);
        case TuringMachine::Move::Right:
          return sa.kind(right) == Kind::Left ? sa.right(act->write, ro) : err;
        case TuringMachine::Move::Left:
          return sa.kind(left) == Kind::Right ? sa.left(act->write, ro) : err;
      }
      return err;
    }
    default: return err;
  }
}

Symbol SignalRule::apply(std::span<const Symbol> nb) const {
  const SignalAlphabet& sa = *sa_;
  std::array<Kind, 7> kinds;
  for (int i = 0; i < 7; ++i) kinds[i] = sa.kind(nb[i]);
  const Symbol ro = sa.read_only(nb[3]);
  switch (decide(kinds)) {
    case Out::B: return sa.signal(Kind::B, ro);
    case Out::E: return sa.signal(Kind::E, ro);
    case Out::S1: return sa.signal(Kind::S1, ro);
    case Out::S2: return sa.signal(Kind::S2, ro);
    case Out::S2p: return sa.signal(Kind::S2p, ro);
    case Out::S3: return sa.signal(Kind::S3, ro);
    case Out::Turnstile: return sa.signal(Kind::Turnstile, ro);
    case Out::HeadInit: return sa.head(sa.machine().initial(), sa.machine().gamma_index("1"), ro);
    case Out::LeftOne: return sa.left(sa.machine().gamma_index("1"), ro);
    case Out::LeftBlank: return sa.left(sa.machine().blank(), ro);
    case Out::Machine: return machine_step(nb[2], nb[3], nb[4]);
  }
  return sa.signal(Kind::E, ro);
}

LocalRule compile_signal_ca(std::shared_ptr<const TuringMachine> machine) {
  machine->validate();
  auto sa = std::make_shared<const SignalAlphabet>(std::move(machine));
  auto program = std::make_shared<const SignalRule>(sa);
  return LocalRule::structured(sa->alphabet(), 3, program, "signal-ca");
}

const SignalRule* as_signal_rule(const LocalRule& rule) { return dynamic_cast<const SignalRule*>(rule.program()); }

// ---------------------------------------------------------------------------

namespace {

Word letters_to_ro(const SignalAlphabet& sa, const Word& w) {
  const std::size_t letters = sa.read_only_size() - 2;  // gamma_a = letters, '#', '$'
  for (Symbol s : w)
    if (s >= letters) throw PreconditionError("word must be over the machine's letters");
  return w;
}

}  // namespace

Word w_hat(const SignalAlphabet& sa, const Word& w) {
  if (w.empty()) throw PreconditionError("w_hat needs a nonempty word");
  letters_to_ro(sa, w);
  const TuringMachine& m = sa.machine();
  const Symbol hash = m.gamma_a().index("#");
  const int zero = m.gamma_index("0");
  Word out{sa.head(m.final2(), zero, hash)};
  for (Symbol a : w) out.push_back(sa.left(zero, a));
  out.push_back(sa.left(zero, hash));
  return out;
}

Word w_tilde(const SignalAlphabet& sa, const Word& w, std::size_t m) {
  letters_to_ro(sa, w);
  Word ro = sigma3_read_only_tape(sa.machine(), w, m);
  Word out;
  for (Symbol a : ro) out.push_back(sa.signal(Kind::E, a));
  return out;
}

namespace {

Configuration place_signals(const SignalAlphabet& sa, const Word& w, std::size_t m, std::size_t n, const Word& u,
                            const Word& v) {
  const Symbol hash = sa.machine().gamma_a().index("#");
  const Word wt = w_tilde(sa, w, m);
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t lo = std::min<std::int64_t>(-2 * nn + 2, -static_cast<std::int64_t>(u.size()));
  const std::int64_t hi = static_cast<std::int64_t>(wt.size() + v.size());  // exclusive
  Word center(static_cast<std::size_t>(hi - lo), sa.signal(Kind::B, hash));
  auto put = [&](std::int64_t i, Symbol s) { center[static_cast<std::size_t>(i - lo)] = s; };
  auto get = [&](std::int64_t i) { return center[static_cast<std::size_t>(i - lo)]; };
  for (std::size_t i = 0; i < u.size(); ++i) put(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(u.size()), u[i]);
  for (std::size_t i = 0; i < wt.size(); ++i) put(static_cast<std::int64_t>(i), wt[i]);
  for (std::size_t i = 0; i < v.size(); ++i) put(static_cast<std::int64_t>(wt.size() + i), v[i]);
  auto signal = [&](std::int64_t i, Kind k) { put(i, sa.signal(k, sa.read_only(get(i)))); };
  signal(-nn + 2, Kind::S1);
  signal(-nn + 3, Kind::S2);
  signal(-nn + 4, Kind::E);
  signal(-2 * nn + 2, Kind::S2);
  return Configuration::two_sided({sa.signal(Kind::B, hash)}, std::move(center), lo, {sa.signal(Kind::E, hash)});
}

}  // namespace

Configuration build_proof_config(const SignalAlphabet& sa, const Word& w, std::size_t m, std::size_t n,
                                 const Word& u, const Word& v) {
  if (n <= u.size() + 4) throw PreconditionError("proof configuration needs n > |u| + 4");
  for (Symbol s : u)
    if (s >= sa.size()) throw PreconditionError("u is not over the signal alphabet");
  for (Symbol s : v)
    if (s >= sa.size()) throw PreconditionError("v is not over the signal alphabet");
  return place_signals(sa, w, m, n, u, v);
}

Configuration initialization_config(const SignalAlphabet& sa, const Word& w, std::size_t m, std::size_t n) {
  if (n < 1) throw PreconditionError("initialization needs n >= 1");
  return place_signals(sa, w, m, n, {}, {});
}

EventSchedule expected_events(const TuringMachine& machine, std::size_t n) {
  if (n < 1) throw PreconditionError("expected_events needs n >= 1");
  const auto nn = static_cast<std::int64_t>(n);
  const int one = machine.gamma_index("1");
  EventSchedule s;
  s.events.push_back({nn, 2, "S1 x S2 -> |- (q0,1) (<-,1) S3",
                      {{-1, Kind::Turnstile}, {0, Kind::Head, machine.initial(), one}, {1, Kind::Left, -1, one},
                       {2, Kind::S3}}});
  s.events.push_back({2 * nn + 1, 3 * nn + 5, "S3 x S2 -> S2'", {{3 * nn + 5, Kind::S2p}}});
  return s;
}

EventCheck verify_events(const LocalRule& rule, const SignalAlphabet& sa, Configuration x,
                         const EventSchedule& schedule) {
  EventCheck out;
  std::int64_t t = 0;
  for (const auto& ev : schedule.events) {
    for (; t < ev.time; ++t) x = apply_step(rule, x);
    for (const auto& cell : ev.pattern) {
      const Symbol s = x.at(cell.coordinate);
      bool ok = sa.kind(s) == cell.kind;
      if (ok && cell.state >= 0) ok = sa.state(s) == cell.state;
      if (ok && cell.tape >= 0) ok = sa.tape(s) == cell.tape;
      if (!ok) {
        out.ok = false;
        out.mismatches.push_back(ev.label + ": at t=" + std::to_string(ev.time) + ", cell " +
                                 std::to_string(cell.coordinate) + " is " + sa.alphabet().name(s) +
                                 ", expected " + kind_name(cell.kind));
      }
    }
  }
  return out;
}

namespace {

bool w_hat_at_origin(const Configuration& x, const Word& hat) {
  for (std::size_t i = 0; i < hat.size(); ++i)
    if (x.at(static_cast<std::int64_t>(i)) != hat[i]) return false;
  return true;
}

}  // namespace

std::optional<std::int64_t> first_w_hat(const LocalRule& rule, const SignalAlphabet& sa, Configuration x,
                                        const Word& w, std::int64_t horizon) {
  const Word hat = w_hat(sa, w);
  for (std::int64_t t = 0; t <= horizon; ++t) {
    if (w_hat_at_origin(x, hat)) return t;
    if (t < horizon) x = apply_step(rule, x);
  }
  return std::nullopt;
}

FidelityReport check_fidelity(const LocalRule& rule, const SignalAlphabet& sa, const Word& w, std::size_t m,
                              std::size_t n, std::uint64_t max_machine_steps) {
  const TuringMachine& tm = sa.machine();
  FidelityReport rep;
  const Word ro = sigma3_read_only_tape(tm, w, m);
  rep.machine_run = simulate_tm(tm, ro, sigma3_read_write_tape(tm, n), max_machine_steps, true);
  const auto& trace = rep.machine_run.trace;

  Configuration x = initialization_config(sa, w, m, n);
  const auto nn = static_cast<std::int64_t>(n);
  for (std::int64_t t = 0; t < nn; ++t) x = apply_step(rule, x);

  const std::int64_t tape_end = 3 * nn + 5;  // the blank cell
  const Word hat = w.empty() ? Word{} : w_hat(sa, w);
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    if (rep.first_mismatch.empty()) rep.first_mismatch = std::move(msg);
  };

  // Replays the machine on its own tape copy to compare cell contents.
  std::vector<int> tape = sigma3_read_write_tape(tm, n);
  for (std::size_t s = 0; s < trace.size(); ++s) {
    const std::int64_t time = nn + static_cast<std::int64_t>(s);
    if (s > 0) {
      const auto& prev = trace[s - 1];
      const auto ph = static_cast<std::size_t>(prev.head);
      const auto& act = tm.action(prev.state, ph < ro.size() ? ro[ph] : tm.filler(), tape[ph]);
      tape[ph] = act->write;
      x = apply_step(rule, x);
    }
    const auto& st = trace[s];
    if (static_cast<std::size_t>(st.head) >= tape.size()) tape.resize(static_cast<std::size_t>(st.head) + 1, tm.blank());
    if (!hat.empty() && !rep.w_hat_time && w_hat_at_origin(x, hat)) rep.w_hat_time = time;

    // Cells with a formed tape: the S3 wake reaches 3s+1, then the S2' wake.
    std::int64_t formed = std::min<std::int64_t>(3 * static_cast<std::int64_t>(s) + 1, tape_end - 1);
    if (static_cast<std::int64_t>(s) >= nn + 2) formed = tape_end;
    if (sa.kind(x.at(-1)) != Kind::Turnstile) fail("t=" + std::to_string(time) + ": cell -1 is not |-");
    for (std::int64_t i = 0; i <= formed; ++i) {
      const Symbol c = x.at(i);
      const Kind k = sa.kind(c);
      const bool is_head = i == st.head;
      if (is_head ? k != Kind::Head : k != (i < st.head ? Kind::Right : Kind::Left)) {
        fail("t=" + std::to_string(time) + ": cell " + std::to_string(i) + " is " + sa.alphabet().name(c));
        break;
      }
      const auto ui = static_cast<std::size_t>(i);
      const int g = ui < tape.size() ? tape[ui] : tm.blank();
      const Symbol a = ui < ro.size() ? ro[ui] : tm.filler();
      if (sa.tape(c) != g || (is_head && sa.state(c) != st.state) || sa.read_only(c) != a) {
        fail("t=" + std::to_string(time) + ": cell " + std::to_string(i) + " is " + sa.alphabet().name(c) +
             ", machine step " + std::to_string(s) + " disagrees");
        break;
      }
    }
    if (static_cast<std::int64_t>(s) == nn + 2) {
      bool init = true;
      // Right of the head the cells hold whatever the replayed tape holds;
      // past anything the machine has touched that is 1^(3n+5) blank.
      for (std::int64_t i = st.head + 1; i <= tape_end; ++i) {
        const Symbol c = x.at(i);
        const auto ui = static_cast<std::size_t>(i);
        init = init && sa.kind(c) == Kind::Left && sa.tape(c) == (ui < tape.size() ? tape[ui] : tm.blank());
      }
      rep.tape_initialized = init;
      if (!init) fail("read-write tape not initialized to 1^(3n+5) blank");
    }
    if (!rep.ok) break;
    ++rep.compared_steps;
  }
  return rep;
}

}  // namespace glimca
