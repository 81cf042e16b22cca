#include "glimca/rule.hpp"

#include "glimca/budget.hpp"
#include "glimca/error.hpp"

namespace glimca {

namespace {

void check_radius(int radius) {
  if (radius < 0) throw PreconditionError("radius must be nonnegative");
}

}  // namespace

LocalRule LocalRule::tabulate(Alphabet alphabet, int radius, const Function& f, std::string name) {
  check_radius(radius);
  const std::uint64_t entries = saturating_pow(alphabet.size(), 2 * radius + 1);
  if (entries > kDenseTableCap)
    throw BudgetError("dense rule table would need " + std::to_string(entries) +
                      " entries (cap 2^24); use a structured rule program");
  LocalRule rule(std::move(alphabet), radius, std::move(name));
  const std::size_t width = 2 * radius + 1;
  rule.table_.resize(entries);
  for (std::uint64_t code = 0; code < entries; ++code) {
    Word nb = word_from_code(code, width, rule.alphabet_.size());
    Symbol out = f(nb);
    if (out >= rule.alphabet_.size()) throw PreconditionError("rule output outside alphabet");
    rule.table_[code] = out;
  }
  return rule;
}

LocalRule LocalRule::from_table(Alphabet alphabet, int radius, std::vector<Symbol> table,
                                std::string name) {
  check_radius(radius);
  const std::uint64_t entries = saturating_pow(alphabet.size(), 2 * radius + 1);
  if (entries > kDenseTableCap) throw BudgetError("dense rule table exceeds 2^24 entries");
  if (table.size() != entries)
    throw PreconditionError("rule table must list all " + std::to_string(entries) + " neighborhoods");
  for (Symbol s : table)
    if (s >= alphabet.size()) throw PreconditionError("rule output outside alphabet");
  LocalRule rule(std::move(alphabet), radius, std::move(name));
  rule.table_ = std::move(table);
  return rule;
}

LocalRule LocalRule::structured(Alphabet alphabet, int radius,
                                std::shared_ptr<const RuleProgram> program, std::string name) {
  check_radius(radius);
  if (!program) throw PreconditionError("null rule program");
  LocalRule rule(std::move(alphabet), radius, std::move(name));
  rule.program_ = std::move(program);
  return rule;
}

LocalRule LocalRule::builtin(std::string_view name, Alphabet alphabet) {
  const auto n = static_cast<Symbol>(alphabet.size());
  if (name == "identity")
    return tabulate(std::move(alphabet), 1, [](auto nb) { return nb[1]; }, "identity");
  if (name == "min")
    return tabulate(std::move(alphabet), 1, [](auto nb) { return std::min(nb[1], nb[2]); }, "min");
  if (name == "shift")
    return tabulate(std::move(alphabet), 1, [](auto nb) { return nb[2]; }, "shift");
  if (name == "swap")
    return tabulate(std::move(alphabet), 1, [n](auto nb) { return n - 1 - nb[1]; }, "swap");
  throw ParseError("unknown builtin rule '" + std::string(name) + "'");
}

}  // namespace glimca
