#include "glimca/tm.hpp"

#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "glimca/budget.hpp"
#include "glimca/error.hpp"

namespace glimca {

TuringMachine::TuringMachine(std::vector<std::string> states, int initial, int final1, int final2,
                             std::vector<std::string> gamma, Alphabet gamma_a)
    : states_(std::move(states)),
      initial_(initial),
      final1_(final1),
      final2_(final2),
      gamma_(std::move(gamma)),
      gamma_a_(std::move(gamma_a)) {
  const int q = static_cast<int>(states_.size());
  auto in_range = [q](int s) { return s >= 0 && s < q; };
  if (!in_range(initial_) || !in_range(final1_) || !in_range(final2_))
    throw PreconditionError("machine state index out of range");
  if (final1_ == final2_) throw PreconditionError("the two final states must differ");
  std::set<std::string> seen;
  for (const auto& s : states_)
    if (s.empty() || !seen.insert(s).second) throw PreconditionError("state names must be nonempty and unique");
  seen.clear();
  for (const auto& g : gamma_) {
    if (g.empty() || g == kBlankName || !seen.insert(g).second)
      throw PreconditionError("tape symbol names must be nonempty, unique and not '_'");
  }
  if (!seen.count("1")) throw PreconditionError("read-write alphabet must contain '1'");
  if (!gamma_a_.contains("#") || !gamma_a_.contains("$"))
    throw PreconditionError("read-only alphabet must contain '#' and '$'");
  delta_.assign(states_.size() * gamma_a_.size() * tape_symbols(), std::nullopt);
}

int TuringMachine::state_index(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return static_cast<int>(i);
  throw PreconditionError("unknown state '" + std::string(name) + "'");
}

int TuringMachine::gamma_index(std::string_view name) const {
  if (name == kBlankName) return blank();
  for (std::size_t i = 0; i < gamma_.size(); ++i)
    if (gamma_[i] == name) return static_cast<int>(i);
  throw PreconditionError("unknown tape symbol '" + std::string(name) + "'");
}

std::size_t TuringMachine::slot(int state, Symbol ro, int rw) const {
  if (state < 0 || static_cast<std::size_t>(state) >= states_.size() || ro >= gamma_a_.size() || rw < 0 ||
      static_cast<std::size_t>(rw) >= tape_symbols())
    throw PreconditionError("transition index out of range");
  return (static_cast<std::size_t>(state) * gamma_a_.size() + ro) * tape_symbols() + static_cast<std::size_t>(rw);
}

void TuringMachine::set(int state, Symbol read_only, int read_write, Action action) {
  if (is_final(state)) throw PreconditionError("final states have no transitions");
  if (action.state < 0 || static_cast<std::size_t>(action.state) >= states_.size() || action.write < 0 ||
      static_cast<std::size_t>(action.write) >= tape_symbols())
    throw PreconditionError("transition target out of range");
  auto& cell = delta_[slot(state, read_only, read_write)];
  if (cell) throw PreconditionError("duplicate transition for state '" + states_[state] + "'");
  cell = action;
}

const std::optional<TuringMachine::Action>& TuringMachine::action(int state, Symbol read_only, int read_write) const {
  return delta_[slot(state, read_only, read_write)];
}

void TuringMachine::validate() const {
  for (int q = 0; q < static_cast<int>(states_.size()); ++q)
    for (Symbol a = 0; a < gamma_a_.size(); ++a)
      for (int g = 0; g < static_cast<int>(tape_symbols()); ++g) {
        const bool has = action(q, a, g).has_value();
        if (is_final(q) && has) throw PreconditionError("final state '" + states_[q] + "' has a transition");
        if (!is_final(q) && !has)
          throw PreconditionError("missing transition for (" + states_[q] + ", " + gamma_a_.name(a) + ", " +
                                  tape_name(g) + ")");
      }
}

std::string outcome_name(TmRun::Outcome o) {
  switch (o) {
    case TmRun::Outcome::HaltedFinal1: return "halted-final1";
    case TmRun::Outcome::HaltedFinal2: return "halted-final2";
    case TmRun::Outcome::LeftEdgeFault: return "left-edge-fault";
    case TmRun::Outcome::Timeout: return "timeout";
  }
  return "?";
}

TmRun simulate_tm(const TuringMachine& machine, const Word& read_only, const std::vector<int>& read_write,
                  std::uint64_t max_steps, bool record_trace) {
  for (Symbol s : read_only)
    if (s >= machine.gamma_a().size()) throw PreconditionError("read-only tape symbol out of range");
  for (int g : read_write)
    if (g < 0 || static_cast<std::size_t>(g) >= machine.tape_symbols())
      throw PreconditionError("read-write tape symbol out of range");

  TmRun run;
  run.read_only = read_only;
  run.read_write = read_write;
  run.state = machine.initial();
  auto grow = [&](std::size_t pos) {
    if (run.read_only.size() <= pos) run.read_only.resize(pos + 1, machine.filler());
    if (run.read_write.size() <= pos) run.read_write.resize(pos + 1, machine.blank());
  };
  for (;;) {
    const auto pos = static_cast<std::size_t>(run.head);
    grow(pos);
    if (record_trace) run.trace.push_back({run.state, run.head, run.read_write[pos]});
    if (run.state == machine.final1()) { run.outcome = TmRun::Outcome::HaltedFinal1; return run; }
    if (run.state == machine.final2()) { run.outcome = TmRun::Outcome::HaltedFinal2; return run; }
    if (run.steps >= max_steps) { run.outcome = TmRun::Outcome::Timeout; return run; }
    const auto& act = machine.action(run.state, run.read_only[pos], run.read_write[pos]);
    if (!act) throw PreconditionError("machine is not total at state '" + machine.state_name(run.state) + "'");
    if (act->move == TuringMachine::Move::Left && run.head == 0) {
      run.outcome = TmRun::Outcome::LeftEdgeFault;
      return run;
    }
    run.read_write[pos] = act->write;
    run.state = act->state;
    if (act->move == TuringMachine::Move::Left) --run.head;
    if (act->move == TuringMachine::Move::Right) ++run.head;
    ++run.steps;
  }
}

// ---------------------------------------------------------------------------

PredicateProgram PredicateProgram::always_true(Alphabet letters) {
  PredicateProgram p;
  p.kind_ = Kind::AlwaysTrue;
  p.letters_ = std::move(letters);
  return p;
}

PredicateProgram PredicateProgram::always_false(Alphabet letters) {
  PredicateProgram p;
  p.kind_ = Kind::AlwaysFalse;
  p.letters_ = std::move(letters);
  return p;
}

std::size_t PredicateProgram::index(const Word& w, std::size_t m, std::size_t mp, std::size_t k) const {
  // Words of length < |w| come first, then w in base |A|.
  std::size_t offset = 0, block = 1;
  for (std::size_t len = 0; len < w.size(); ++len, block *= letters_.size()) offset += block;
  std::size_t wi = offset + static_cast<std::size_t>(word_code(w, letters_.size()));
  return ((wi * (max_m_ + 1) + m) * (max_mprime_ + 1) + mp) * (max_k_ + 1) + k;
}

PredicateProgram PredicateProgram::table(Alphabet letters, std::size_t max_word, std::size_t max_m,
                                         std::size_t max_mprime, std::size_t max_k, const Fn& fn) {
  PredicateProgram p;
  p.kind_ = Kind::Table;
  p.letters_ = std::move(letters);
  p.max_word_ = max_word;
  p.max_m_ = max_m;
  p.max_mprime_ = max_mprime;
  p.max_k_ = max_k;
  const std::size_t a = p.letters_.size();
  std::size_t words = 0, block = 1;
  for (std::size_t len = 0; len <= max_word; ++len, block = saturating_pow(a, len)) words += block;
  const std::size_t total = words * (max_m + 1) * (max_mprime + 1) * (max_k + 1);
  if (total > kDenseTableCap) throw BudgetError("predicate table exceeds the dense-table cap");
  p.values_.assign(total, 0);
  for (std::size_t len = 0; len <= max_word; ++len) {
    const std::size_t count = saturating_pow(a, len);
    for (std::size_t code = 0; code < count; ++code) {
      const Word w = word_from_code(code, len, a);
      for (std::size_t m = 0; m <= max_m; ++m)
        for (std::size_t mp = 0; mp <= max_mprime; ++mp)
          for (std::size_t k = 0; k <= max_k; ++k) p.values_[p.index(w, m, mp, k)] = fn(w, m, mp, k) ? 1 : 0;
    }
  }
  return p;
}

bool PredicateProgram::in_range(const Word& w, std::size_t m, std::size_t mp, std::size_t k) const {
  if (kind_ != Kind::Table) return true;
  return w.size() <= max_word_ && m <= max_m_ && mp <= max_mprime_ && k <= max_k_;
}

bool PredicateProgram::operator()(const Word& w, std::size_t m, std::size_t mp, std::size_t k) const {
  switch (kind_) {
    case Kind::AlwaysTrue: return true;
    case Kind::AlwaysFalse: return false;
    case Kind::Table: break;
  }
  if (!in_range(w, m, mp, k)) throw PreconditionError("predicate argument outside its tabulated range");
  for (Symbol s : w)
    if (s >= letters_.size()) throw PreconditionError("predicate word symbol out of range");
  return values_[index(w, m, mp, k)] != 0;
}

bool sigma3_reference(const PredicateProgram& psi, const Word& w, std::size_t m, std::size_t n) {
  std::size_t mp = 0, k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (psi(w, m, mp, k)) { ++mp; k = 0; } else { ++k; }
  }
  return k == 0;
}

// ---------------------------------------------------------------------------
// Enumeration machine. States are generated on demand from a control record.

namespace {

enum class Phase { Scan, Rewind, Skip, Triple, RewindZero, Zero, ZeroBack, Final1, Final2 };
enum RoScan { kStart = 0, kInW = 1, kInDollar = 2, kRoDone = 3 };
constexpr int kCountDone = 8;

struct Ctl {
  Phase phase = Phase::Scan;
  int ro = kStart;
  int count = 0;
  Word w;
  std::size_t m = 0;
  int skip = 0;
  int tphase = 0;
  bool has_pair = false;
  std::size_t mp = 0, k = 0;

  std::string name(const Alphabet& letters, bool keep_word) const {
    auto pair = [&] { return has_pair ? "(" + std::to_string(mp) + ";" + std::to_string(k) + ")" : std::string("()"); };
    std::string ctx = keep_word ? ("[" + letters.format_word(w, ".") + "|" + std::to_string(m) + "]") : "";
    switch (phase) {
      case Phase::Scan:
        if (ro == kStart && count == 0) return "q0";
        return "scan" + std::to_string(ro) + "c" + (count == kCountDone ? "d" : std::to_string(count)) + ctx;
      case Phase::Rewind: return "rewind" + ctx;
      case Phase::Skip: return "skip" + std::to_string(skip) + ctx;
      case Phase::Triple: return "pair" + std::to_string(tphase) + pair() + ctx;
      case Phase::RewindZero: return "rewind0";
      case Phase::Zero: return "zero";
      case Phase::ZeroBack: return "zeroback";
      case Phase::Final1: return "qf1";
      case Phase::Final2: return "qf2";
    }
    return "?";
  }
};

struct Step {
  Ctl next;
  int write;
  TuringMachine::Move move;
};

class Sigma3Builder {
 public:
  Sigma3Builder(const PredicateProgram& psi) : psi_(psi), letters_(psi.letters()) {
    keep_ = psi.kind() == PredicateProgram::Kind::Table;
  }

  static constexpr int kOne = 0, kZero = 1, kAnchor = 2, kBlank = 3;

  Step step(const Ctl& c, Symbol ro, int rw) const {
    const std::size_t nl = letters_.size();
    const bool is_letter = ro < nl;
    const bool is_hash = ro == nl;
    const bool is_dollar = ro == nl + 1;
    Ctl fault;
    fault.phase = Phase::Final1;
    const Step reject{fault, rw, TuringMachine::Move::Stay};

    switch (c.phase) {
      case Phase::Scan: {
        Ctl n = c;
        const bool at_origin = c.ro == kStart && c.count == 0;
        if (c.count != kCountDone) {
          if (rw == kOne)
            n.count = c.count < 5 ? c.count + 1 : 5 + (c.count - 5 + 1) % 3;
          else if (rw == kBlank && c.count == 5)
            n.count = kCountDone;
          else
            return reject;
        }
        switch (c.ro) {
          case kStart:
            if (!is_hash) return reject;
            n.ro = kInW;
            break;
          case kInW:
            if (is_letter) {
              if (keep_) {
                if (c.w.size() >= psi_.max_word()) return reject;
                n.w.push_back(ro);
              }
            } else if (is_hash) {
              n.ro = kInDollar;
            } else {
              return reject;
            }
            break;
          case kInDollar:
            if (is_dollar) {
              if (keep_) {
                if (c.m >= psi_.max_m()) return reject;
                ++n.m;
              }
            } else if (is_hash) {
              n.ro = kRoDone;
            } else {
              return reject;
            }
            break;
          default: break;
        }
        const int write = at_origin ? kAnchor : rw;
        if (n.ro == kRoDone && n.count == kCountDone) {
          n.phase = Phase::Rewind;
          return {n, write, TuringMachine::Move::Left};
        }
        return {n, write, TuringMachine::Move::Right};
      }
      case Phase::Rewind: {
        if (rw != kAnchor) return {c, rw, TuringMachine::Move::Left};
        Ctl n = c;
        n.phase = Phase::Skip;
        n.skip = 1;
        return {n, rw, TuringMachine::Move::Right};
      }
      case Phase::Skip: {
        if (rw != kOne) return reject;
        Ctl n = c;
        if (c.skip < 4) {
          n.skip = c.skip + 1;
        } else {
          n.phase = Phase::Triple;
          n.skip = 0;
          n.tphase = 0;
        }
        return {n, rw, TuringMachine::Move::Right};
      }
      case Phase::Triple: {
        if (rw == kOne) {
          Ctl n = c;
          if (c.tphase == 0) {
            if (!c.has_pair) {
              n.has_pair = true;
              n.mp = 0;
              n.k = 0;
            } else if (!advance(n)) {
              return reject;
            }
          }
          n.tphase = (c.tphase + 1) % 3;
          return {n, rw, TuringMachine::Move::Right};
        }
        if (rw != kBlank || c.tphase != 0) return reject;
        if (c.has_pair && c.k > 0) return reject;
        Ctl n;
        n.phase = Phase::RewindZero;
        return {n, rw, TuringMachine::Move::Left};
      }
      case Phase::RewindZero: {
        if (rw != kAnchor) return {c, rw, TuringMachine::Move::Left};
        Ctl n;
        n.phase = Phase::Zero;
        return {n, kZero, TuringMachine::Move::Right};
      }
      case Phase::Zero: {
        if (is_letter) return {c, kZero, TuringMachine::Move::Right};
        if (!is_hash) return reject;
        Ctl n;
        n.phase = Phase::ZeroBack;
        return {n, kZero, TuringMachine::Move::Left};
      }
      case Phase::ZeroBack: {
        if (is_letter) return {c, kZero, TuringMachine::Move::Left};
        if (!is_hash) return reject;
        Ctl n;
        n.phase = Phase::Final2;
        return {n, kZero, TuringMachine::Move::Stay};
      }
      default: break;
    }
    return reject;
  }

  std::string name(const Ctl& c) const { return c.name(letters_, keep_); }

 private:
  // Moves to the next pair; canonicalizes constant predicates so the state
  // set stays finite.
  bool advance(Ctl& n) const {
    switch (psi_.kind()) {
      case PredicateProgram::Kind::AlwaysTrue: n.mp = 0; n.k = 0; return true;
      case PredicateProgram::Kind::AlwaysFalse: n.mp = 0; n.k = 1; return true;
      case PredicateProgram::Kind::Table: break;
    }
    if (!psi_.in_range(n.w, n.m, n.mp, n.k)) return false;
    if (psi_(n.w, n.m, n.mp, n.k)) {
      ++n.mp;
      n.k = 0;
    } else {
      ++n.k;
    }
    return true;
  }

  const PredicateProgram& psi_;
  const Alphabet& letters_;
  bool keep_ = false;
};

}  // namespace

TuringMachine build_sigma3_machine(const PredicateProgram& psi, std::size_t max_n) {
  for (const auto& name : psi.letters().names())
    if (name == "#" || name == "$") throw PreconditionError("letters must not include '#' or '$'");
  if (psi.kind() == PredicateProgram::Kind::Table && max_n >= 2 &&
      (psi.max_mprime() + 2 < max_n || psi.max_k() + 2 < max_n))
    throw PreconditionError("predicate range exceeded: pairs up to " + std::to_string(max_n - 2) +
                            " are reachable for n <= " + std::to_string(max_n));

  std::vector<std::string> ro_names = psi.letters().names();
  ro_names.push_back("#");
  ro_names.push_back("$");
  const Alphabet gamma_a(ro_names);

  Sigma3Builder b(psi);
  std::map<std::string, int> ids;
  std::vector<std::string> names;
  std::vector<Ctl> ctls;
  std::deque<int> queue;
  auto intern = [&](const Ctl& c) {
    const std::string nm = b.name(c);
    auto [it, fresh] = ids.emplace(nm, static_cast<int>(names.size()));
    if (fresh) {
      names.push_back(nm);
      ctls.push_back(c);
      if (c.phase != Phase::Final1 && c.phase != Phase::Final2) queue.push_back(it->second);
    }
    return it->second;
  };
  Ctl f1, f2;
  f1.phase = Phase::Final1;
  f2.phase = Phase::Final2;
  intern(Ctl{});
  const int final1 = intern(f1);
  const int final2 = intern(f2);

  struct Pending { int q; Symbol ro; int rw; Step s; };
  std::vector<Pending> pending;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    const Ctl c = ctls[q];
    for (Symbol ro = 0; ro < gamma_a.size(); ++ro)
      for (int rw = 0; rw <= Sigma3Builder::kBlank; ++rw) {
        Step s = b.step(c, ro, rw);
        intern(s.next);
        pending.push_back({q, ro, rw, std::move(s)});
      }
    if (names.size() > kDenseTableCap) throw BudgetError("enumeration machine too large");
  }

  TuringMachine tm(names, 0, final1, final2, {"1", "0", "^"}, gamma_a);
  for (const auto& p : pending)
    tm.set(p.q, p.ro, p.rw, {ids.at(b.name(p.s.next)), p.s.write, p.s.move});
  tm.validate();
  return tm;
}

Word sigma3_read_only_tape(const TuringMachine& machine, const Word& w_over_gamma_a, std::size_t m) {
  const Symbol hash = machine.gamma_a().index("#");
  const Symbol dollar = machine.gamma_a().index("$");
  Word tape{hash};
  tape.insert(tape.end(), w_over_gamma_a.begin(), w_over_gamma_a.end());
  tape.push_back(hash);
  tape.insert(tape.end(), m, dollar);
  tape.push_back(hash);
  return tape;
}

std::vector<int> sigma3_read_write_tape(const TuringMachine& machine, std::size_t n) {
  std::vector<int> tape(3 * n + 5, machine.gamma_index("1"));
  tape.push_back(machine.blank());
  return tape;
}

}  // namespace glimca
