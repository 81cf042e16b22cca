#include <random>

#include "doctest.h"
#include "glimca/engine.hpp"
#include "glimca/error.hpp"
#include "glimca/image_set.hpp"
#include "glimca/render.hpp"
#include "oracles.hpp"

using namespace glimca;

namespace {

const Alphabet kBin({"0", "1"});

Word w(const std::string& s) { return kBin.parse_word(s); }

}  // namespace

TEST_CASE("alphabet parses and shows words") {
  CHECK(kBin.parse_word("0110") == Word{0, 1, 1, 0});
  CHECK(kBin.show({1, 0}) == "10");
  const Alphabet multi({"ab", "a", "b"});
  CHECK(multi.parse_word("ab,a") == Word{0, 1});
  CHECK(multi.parse_word("aba") == Word{0, 1});  // longest match first
  CHECK(multi.show({1, 2}) == "a,b");
  CHECK_THROWS_AS(Alphabet({"x", "x"}), ParseError);
  CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), ParseError);
  CHECK_THROWS_AS(kBin.parse_word("012"), ParseError);
}

TEST_CASE("apply_step on cyclic words") {
  const auto id = LocalRule::builtin("identity", kBin);
  const auto mn = LocalRule::builtin("min", kBin);
  const auto sh = LocalRule::builtin("shift", kBin);
  CHECK(apply_step(id, Configuration::cyclic(w("0101"))).word() == w("0101"));
  CHECK(apply_step(mn, Configuration::cyclic(w("0101"))).word() == w("0000"));
  CHECK(apply_step(sh, Configuration::cyclic(w("0011"))).word() == w("0110"));
}

TEST_CASE("apply_step rejects a foreign alphabet") {
  const Alphabet tri({"0", "1", "2"});
  const auto mn = LocalRule::builtin("min", tri);
  CHECK_THROWS_AS(check_alphabet(mn, kBin), PreconditionError);
}

TEST_CASE("run: identity, min on a two-sided point, shift") {
  const auto id = LocalRule::builtin("identity", kBin);
  const auto d = run(id, Configuration::cyclic(w("0110")), 3, 0, 3);
  REQUIRE(d.rows.size() == 4);
  for (const auto& row : d.rows) CHECK(row == w("0110"));

  const auto mn = LocalRule::builtin("min", kBin);
  const auto x = Configuration::two_sided(w("1"), w("101"), -1, w("1"));
  const auto m = run(mn, x, 2, -2, 2);
  CHECK(m.rows[0] == w("11011"));
  CHECK(m.rows[1] == w("10011"));
  CHECK(m.rows[2] == w("00011"));

  const auto sh = LocalRule::builtin("shift", kBin);
  const auto s = run(sh, Configuration::cyclic(w("01")), 2, 0, 1);
  CHECK(s.rows == std::vector<Word>{w("01"), w("10"), w("01")});
  CHECK(render(s, RenderFormat::Text) == "01\n10\n01\n");
}

TEST_CASE("run enforces its budget and window order") {
  const auto id = LocalRule::builtin("identity", kBin);
  CHECK_THROWS_AS(run(id, Configuration::cyclic(w("01")), 2, 3, 1), PreconditionError);
  CHECK_THROWS_AS(run(id, Configuration::cyclic(w("01")), 1 << 20, 0, 1 << 20), BudgetError);
}

TEST_CASE("determined_image examples and precondition") {
  const auto mn = LocalRule::builtin("min", kBin);
  // min(x_i, x_{i+1}) with symmetric radius 1: output cell i sees i-1..i+1.
  CHECK(determined_image(mn, w("0110"), 1) == w("10"));
  CHECK(determined_image(mn, w("111"), 1) == w("1"));
  CHECK_THROWS_AS(determined_image(mn, w("11"), 1), PreconditionError);
  CHECK(determined_image(mn, w("11"), 0) == w("11"));
}

TEST_CASE("cylinder run marks the light cone as determined") {
  const auto mn = LocalRule::builtin("min", kBin);
  const auto d = run(mn, Cylinder{w("0110"), 0}, 2, -1, 4);
  CHECK(d.determined[0] == std::vector<char>{0, 1, 1, 1, 1, 0});
  CHECK(d.determined[1] == std::vector<char>{0, 0, 1, 1, 0, 0});
  CHECK(d.determined[2] == std::vector<char>{0, 0, 0, 0, 0, 0});
}

TEST_CASE("property: apply_step commutes with rotation on cyclic words") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t a = 2 + trial % 2;
    const int r = 1 + trial % 2;
    const auto t = oracle::random_table(a, r, gen);
    const auto rule = oracle::to_rule(t);
    Word x(3 + trial % 9);
    for (auto& c : x) c = static_cast<Symbol>(gen() % a);
    const auto c = Configuration::cyclic(x);
    const std::int64_t k = static_cast<std::int64_t>(gen() % x.size());
    CHECK(apply_step(rule, c.rotated(k)) == apply_step(rule, c).rotated(k));
    CHECK(apply_step(rule, c).period() == x.size());
  }
}

TEST_CASE("property: two-sided stepping agrees with a brute-force finite evolution") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t a = 2 + trial % 2;
    const int r = 1 + trial % 2;
    const auto t = oracle::random_table(a, r, gen);
    const auto rule = oracle::to_rule(t);
    auto rnd = [&](std::size_t n) {
      Word x(n);
      for (auto& c : x) c = static_cast<Symbol>(gen() % a);
      return x;
    };
    const Word left = rnd(1 + gen() % 3), right = rnd(1 + gen() % 3), center = rnd(gen() % 6);
    const std::int64_t off = static_cast<std::int64_t>(gen() % 7) - 3;
    auto x = Configuration::two_sided(left, center, off, right);
    const int steps = 4;
    const std::int64_t lo = -20, hi = 20;
    Word init = x.window(lo - r * steps, hi + r * steps);
    const Word expect = oracle::steps(t, init, steps);
    for (int s = 0; s < steps; ++s) x = apply_step(rule, x);
    CHECK(x.window(lo, hi) == expect);
  }
}

TEST_CASE("property: determined_image equals every completion's image") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = oracle::random_table(2, 1, gen);
    const auto rule = oracle::to_rule(t);
    Word x(5 + gen() % 3);
    for (auto& c : x) c = static_cast<Symbol>(gen() % 2);
    const int steps = 1 + static_cast<int>(gen() % 2);
    const Word det = determined_image(rule, x, steps);
    const auto set = oracle::cylinder_image(t, x, 0, steps, steps, static_cast<std::int64_t>(x.size()) - steps - 1);
    REQUIRE(set.size() == 1);
    CHECK(*set.begin() == det);
  }
}

TEST_CASE("cylinder_image_set matches brute force and fails loudly beyond budget") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t a = 2 + trial % 2;
    const auto t = oracle::random_table(a, 1, gen);
    const auto rule = oracle::to_rule(t);
    Word x(1 + gen() % 4);
    for (auto& c : x) c = static_cast<Symbol>(gen() % a);
    const int steps = static_cast<int>(gen() % 3);
    const std::int64_t pos = static_cast<std::int64_t>(gen() % 3) - 1;
    const std::int64_t first = -1, last = 2;
    CHECK(cylinder_image_set(rule, {x, pos}, steps, first, last) ==
          oracle::cylinder_image(t, x, pos, steps, first, last));
  }
}

TEST_CASE("cylinder_hits agrees with the image sets") {
  const auto mn = LocalRule::builtin("min", kBin);
  const auto hits = cylinder_hits(mn, {w("1"), 0}, w("1"), 0, 3);
  CHECK(hits == std::vector<bool>{true, true, true, true});
  const auto none = cylinder_hits(mn, {w("0"), 0}, w("1"), 0, 3);
  CHECK(none == std::vector<bool>{false, false, false, false});
  const auto two = cylinder_hits(mn, {w("101"), 0}, w("1"), 0, 2);
  CHECK(two == std::vector<bool>{true, false, false});
}

TEST_CASE("render formats") {
  const auto sh = LocalRule::builtin("shift", kBin);
  const auto d = run(sh, Configuration::cyclic(w("01")), 1, 0, 1);
  CHECK(render(d, RenderFormat::Csv).rfind("t,pos,symbol\n", 0) == 0);
  const std::string pnm = render(d, RenderFormat::Pnm);
  CHECK(pnm.rfind("P6\n2 2\n255\n", 0) == 0);
  CHECK(pnm.size() == std::string("P6\n2 2\n255\n").size() + 2 * 2 * 3);
  CHECK_THROWS_AS(parse_render_format("gif"), ParseError);
}
