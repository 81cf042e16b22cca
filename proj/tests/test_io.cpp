#include <random>

#include "doctest.h"
#include "glimca/error.hpp"
#include "glimca/io.hpp"
#include "glimca/signal_ca.hpp"
#include "oracles.hpp"

using namespace glimca;

namespace {

int parse_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("rule files") {
  const auto mn = parse_rule(read_file("data/min.ca"));
  const auto tab = parse_rule(read_file("data/min_table.ca"));
  CHECK(mn.table() == tab.table());
  CHECK(mn.table() == LocalRule::builtin("min", Alphabet({"0", "1"})).table());
  for (const char* f : {"data/id.ca", "data/shift.ca", "data/swap.ca", "data/min.ca"}) {
    const auto r = parse_rule(read_file(f));
    const auto back = parse_rule(format_rule(r));
    CHECK(back.table() == r.table());
    CHECK(back.alphabet() == r.alphabet());
    CHECK(back.radius() == r.radius());
  }
}

TEST_CASE("property: random rule tables round-trip") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = oracle::random_table(2 + gen() % 2, 1 + static_cast<int>(gen() % 2), gen);
    const auto r = oracle::to_rule(t);
    const auto back = parse_rule(format_rule(r));
    CHECK(back.table() == t.out);
  }
}

TEST_CASE("rule file errors carry line numbers") {
  CHECK(parse_line([] { parse_rule("alphabet: 0 1\nradius: 1\n0 0 0 -> 2\n"); }) == 3);
  CHECK(parse_line([] { parse_rule("alphabet: 0 1\nradius: x\n"); }) == 2);
  CHECK(parse_line([] { parse_rule("// c\nalphabet: 0 1\nradius: 1\nbuiltin: nope\n"); }) == 4);
  CHECK(parse_line([] { parse_rule("alphabet: 0 1\nradius: 1\n0 0 -> 1\n"); }) == 3);
  CHECK_THROWS_AS(parse_rule("alphabet: 0 1\nradius: 1\n0 0 0 -> 1\n"), ParseError);  // incomplete table
  CHECK_THROWS_AS(read_file("data/does-not-exist.ca"), ParseError);
}

TEST_CASE("machine files") {
  const auto m = parse_machine(read_file("data/reference.tm"));
  CHECK(m.state_count() == 4);
  CHECK(m.state_name(m.final2()) == "qf2");
  const auto back = parse_machine(format_machine(m));
  CHECK(back.state_count() == m.state_count());
  for (int q = 0; q < static_cast<int>(m.state_count()); ++q)
    for (Symbol a = 0; a < m.gamma_a().size(); ++a)
      for (int g = 0; g < static_cast<int>(m.tape_symbols()); ++g) {
        const auto& x = m.action(q, a, g);
        const auto& y = back.action(q, a, g);
        REQUIRE(x.has_value() == y.has_value());
        if (x) {
          CHECK(x->state == y->state);
          CHECK(x->write == y->write);
          CHECK(x->move == y->move);
        }
      }
  const auto sig = build_sigma3_machine(PredicateProgram::always_false(Alphabet({"a", "b"})));
  CHECK(parse_machine(format_machine(sig)).state_count() == 38);
  CHECK(parse_line([] { parse_machine("states: q0 qf1 qf2\ninitial: q9\nfinal1: qf1\nfinal2: qf2\ngamma: 1\ngammaA: # $\n"); }) == 2);
}

TEST_CASE("signal rule files") {
  const auto compiled = compile_signal_ca(std::make_shared<const TuringMachine>(parse_machine(read_file("data/reference.tm"))));
  const auto again = parse_rule(format_rule(compiled));
  REQUIRE(as_signal_rule(again) != nullptr);
  CHECK(again.alphabet() == compiled.alphabet());
  CHECK(again.radius() == 3);
}

TEST_CASE("sft files") {
  const auto g = parse_sft(read_file("data/golden_mean.sft"));
  CHECK(g.language(2).size() == 3);
  const auto z = parse_sft(read_file("data/fixed_zero.sft"));
  CHECK(z.language(3).size() == 1);
  CHECK(parse_sft(read_file("data/two_points.sft")).language(4).size() == 2);
  CHECK(parse_line([] { parse_sft("alphabet: 0 1\nforbid: 2\n"); }) == 2);
  CHECK(parse_line([] { parse_sft("alphabet: 0 1\nwindow: 2\nallow: 000\n"); }) == 3);
}

TEST_CASE("configurations") {
  const Alphabet bin({"0", "1"});
  const auto c = parse_configuration("cyclic:0110", bin);
  CHECK(c.is_cyclic());
  CHECK(c.period() == 4);
  const auto t = parse_configuration("0^inf (11@-1) 01^inf", bin);
  CHECK(t.at(-1) == 1);
  CHECK(t.at(0) == 1);
  CHECK(t.at(-2) == 0);
  CHECK(t.at(1) == 0);
  CHECK(t.at(2) == 1);
  for (const auto& x : {c, t}) CHECK(parse_configuration(format_configuration(x, bin), bin) == x);
  CHECK_THROWS_AS(parse_configuration("cyclic:012", bin), ParseError);
  CHECK_THROWS_AS(parse_configuration("0^inf (11@q) 0^inf", bin), ParseError);
}
