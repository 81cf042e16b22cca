#include <random>

#include "doctest.h"
#include "glimca/error.hpp"
#include "glimca/lab.hpp"
#include "oracles.hpp"

using namespace glimca;

namespace {

const Alphabet kBin({"0", "1"});

oracle::Table table_of(const std::string& name) {
  oracle::Table t{2, 1, std::vector<Symbol>(8)};
  for (std::uint64_t c = 0; c < 8; ++c) {
    const Symbol l = (c >> 2) & 1, m = (c >> 1) & 1, r = c & 1;
    t.out[c] = name == "min" ? std::min(m, r) : name == "shift" ? r : name == "swap" ? 1 - m : m;
    (void)l;
  }
  return t;
}

Bounds small_bounds() {
  Bounds b;
  b.U = 1;
  b.T_max = 6;
  b.K = 2;
  b.T0 = 0;
  return b;
}

bool brute_hit(const oracle::Table& t, const Cylinder& cyl, const Word& s, int time) {
  const auto img = oracle::cylinder_image(t, cyl.word, cyl.position, time, 0, static_cast<std::int64_t>(s.size()) - 1);
  return img.count(s) > 0;
}

Word concat3(const Word& a, const Word& b, const Word& c) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

TEST_CASE("bounds defaults and validation") {
  Bounds b;
  CHECK(b.U == 3);
  CHECK(b.T_max == 64);
  CHECK(b.K == 8);
  CHECK(b.N == 1000);
  CHECK(b.period == 256);
  CHECK(b.n == 8);
  CHECK_NOTHROW(b.validate());
  b.K = 100;
  CHECK_THROWS_AS(b.validate(), PreconditionError);
  Bounds c;
  c.T0 = 65;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
}

TEST_CASE("check_enables examples") {
  const auto mn = LocalRule::builtin("min", kBin);
  const auto id = LocalRule::builtin("identity", kBin);
  const auto a = check_enables(mn, {kBin.parse_word("000"), 0}, kBin.parse_word("000"), Bounds{});
  CHECK(a.verdict == EnablingResult::Verdict::Supported);
  CHECK(a.certificate.exact);
  CHECK(a.contexts == 15 * 15);
  const auto b = check_enables(mn, {kBin.parse_word("1"), 0}, kBin.parse_word("1"), Bounds{});
  CHECK(b.verdict == EnablingResult::Verdict::RefutedAtBound);
  REQUIRE(b.witness.has_value());
  CHECK(b.certificate.kind == Certificate::Kind::EnablingRefuted);
  for (const char* v : {"0", "1", "01", "110"}) {
    const auto r = check_enables(id, {kBin.parse_word(v), 0}, kBin.parse_word(v), Bounds{});
    CHECK(r.verdict == EnablingResult::Verdict::Supported);
  }
  CHECK_THROWS_AS(check_enables(mn, {Word{}, 0}, kBin.parse_word("1"), Bounds{}), PreconditionError);
}

TEST_CASE("property: enabling verdicts replay under brute force") {
  std::mt19937_64 gen(3);
  const Bounds b = small_bounds();
  int refuted = 0, supported = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = oracle::random_table(2, 1, gen);
    const auto rule = oracle::to_rule(t);
    Word v(1 + gen() % 2), s(1 + gen() % 2);
    for (auto& x : v) x = static_cast<Symbol>(gen() % 2);
    for (auto& x : s) x = static_cast<Symbol>(gen() % 2);
    const std::int64_t pos = static_cast<std::int64_t>(gen() % 3) - 1;
    const auto r = check_enables(rule, {v, pos}, s, b);
    const int terminal_from = b.T_max - static_cast<int>(b.K) + 1;
    if (r.verdict == EnablingResult::Verdict::RefutedAtBound) {
      ++refuted;
      const auto& [u, w] = *r.witness;
      const Cylinder cyl{concat3(u, v, w), pos - static_cast<std::int64_t>(u.size())};
      std::vector<int> times;
      for (int time = 0; time <= b.T_max; ++time)
        if (brute_hit(t, cyl, s, time)) times.push_back(time);
      CHECK(times == r.witness_hits);
      CHECK((times.empty() || times.back() < terminal_from));
    } else if (r.verdict == EnablingResult::Verdict::Supported) {
      ++supported;
      // Every context reaches s at least K times, one of them late.
      for (const Word& u : std::vector<Word>{{}, {0}, {1}})
        for (const Word& w : std::vector<Word>{{}, {0}, {1}}) {
          const Cylinder cyl{concat3(u, v, w), pos - static_cast<std::int64_t>(u.size())};
          int hits = 0, last = -1;
          for (int time = 0; time <= b.T_max; ++time)
            if (brute_hit(t, cyl, s, time)) { ++hits; last = time; }
          CHECK(hits >= static_cast<int>(b.K));
          CHECK(last >= terminal_from);
        }
    }
  }
  CHECK(refuted > 0);
  CHECK(supported > 0);
}

TEST_CASE("forcing examples") {
  const auto mn = LocalRule::builtin("min", kBin);
  Bounds b;
  LanguageSample zeros = LanguageSample::closure(kBin, {kBin.parse_word("00")}, 2);
  const auto r = search_forcing_word(mn, {kBin.parse_word("0"), 0}, 2, b, zeros);
  REQUIRE(r.found);
  CHECK(kBin.format_word(r.cylinder.word) == "00");
  CHECK(r.cylinder.position == 0);
  CHECK(r.T == 0);
  CHECK(r.certificate.kind == Certificate::Kind::Forcing);

  std::set<Word> all;
  oracle::for_each_word(2, 2, [&](const Word& w) { all.insert(w); });
  const auto full = LanguageSample::closure(kBin, all, 2);
  for (const char* name : {"identity", "shift"}) {
    const auto f = search_forcing_word(LocalRule::builtin(name, kBin), {kBin.parse_word("10"), 0}, 2, b, full);
    CHECK(f.found);
    CHECK(kBin.format_word(f.cylinder.word) == "10");
    CHECK(f.T == 0);
  }
  CHECK_THROWS_AS(search_forcing_word(mn, {kBin.parse_word("0"), 0}, 3, b, zeros), PreconditionError);
}

TEST_CASE("property: forcing results satisfy their contract to horizon 4") {
  std::mt19937_64 gen(9);
  Bounds b;
  b.T_max = 4;
  b.T0 = 0;
  b.K = 1;
  b.branching = 64;
  int found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = trial == 0 ? table_of("min") : oracle::random_table(2, 1, gen);
    const auto rule = oracle::to_rule(t);
    std::set<Word> keep;
    oracle::for_each_word(2, 2, [&](const Word& w) {
      if (gen() % 2) keep.insert(w);
    });
    if (trial == 0) keep = {Word{0, 0}};
    const auto oracle_sample = LanguageSample::closure(kBin, keep, 2);
    const auto r = search_forcing_word(rule, {Word{static_cast<Symbol>(gen() % 2)}, 0}, 2, b, oracle_sample);
    if (!r.found) {
      CHECK(r.unkillable.has_value());
      continue;
    }
    ++found;
    for (int time = r.T; time <= b.T_max; ++time)
      for (const auto& img : oracle::cylinder_image(t, r.cylinder.word, r.cylinder.position, time, 0, 1))
        CHECK(keep.count(img) == 1);
  }
  CHECK(found > 5);
}

TEST_CASE("generic language estimates") {
  Bounds b;
  b.N = 50;
  b.T0 = 40;
  b.T_max = 60;
  b.n = 6;
  b.period = 128;
  const auto mn = estimate_generic_language(LocalRule::builtin("min", kBin), b);
  CHECK(mn.at(6) == std::set<Word>{Word(6, 0)});
  CHECK(mn.at(0) == std::set<Word>{Word{}});
  REQUIRE(mn.sampled.has_value());
  CHECK(mn.sampled->seed == 1);

  b.n = 3;
  for (const char* name : {"identity", "shift"}) {
    const auto s = estimate_generic_language(LocalRule::builtin(name, kBin), b);
    CHECK(s.at(3).size() == 8);
  }
  b.n = 0;
  const auto empty = estimate_generic_language(LocalRule::builtin("min", kBin), b);
  CHECK(empty.max_length == 0);
  CHECK(empty.at(0) == std::set<Word>{Word{}});
}

TEST_CASE("property: estimates are monotone in burn-in and independent of threads") {
  const auto mn = LocalRule::builtin("min", kBin);
  Bounds b;
  b.N = 40;
  b.period = 64;
  b.n = 5;
  b.T_max = 12;
  std::set<Word> prev;
  for (int t0 = 0; t0 <= 12; t0 += 3) {
    b.T0 = t0;
    const auto s = estimate_generic_language(mn, b);
    if (t0 > 0) {
      for (const auto& w : s.at(5)) CHECK(prev.count(w) == 1);
    }
    prev = s.at(5);
  }
  std::mt19937_64 gen(1);
  const auto rule = oracle::to_rule(oracle::random_table(3, 1, gen));
  b.T0 = 2;
  b.threads = 1;
  const auto one = estimate_generic_language(rule, b);
  b.threads = 4;
  const auto four = estimate_generic_language(rule, b);
  for (std::size_t k = 0; k <= b.n; ++k) CHECK(one.at(k) == four.at(k));
}

TEST_CASE("restriction classifier") {
  const Sft full = Sft::from_forbidden(kBin, {});
  const auto sh = restriction_classifier(LocalRule::builtin("shift", kBin), full, 4);
  CHECK(sh.kind == Classification::Kind::Shift);
  CHECK(sh.shift == 1);
  CHECK(sh.label() == "shift(1)");
  REQUIRE(sh.neighborhoods.size() == 4);
  CHECK(sh.neighborhoods[0] == Neighborhood{1, 1, false});
  for (int m = 1; m <= 4; ++m) CHECK(sh.neighborhoods[m - 1] == Neighborhood{m, m, false});
  CHECK(sh.oblique_power == 1);

  for (const auto& sft : {full, Sft::from_forbidden(kBin, {kBin.parse_word("11")})})
    CHECK(restriction_classifier(LocalRule::builtin("identity", kBin), sft, 3).kind == Classification::Kind::Identity);
  const Sft zero = Sft::from_allowed(kBin, 1, {kBin.parse_word("0")});
  CHECK(restriction_classifier(LocalRule::builtin("min", kBin), zero, 3).kind == Classification::Kind::Identity);
  const auto sw = restriction_classifier(LocalRule::builtin("swap", kBin), full, 3);
  CHECK(sw.kind == Classification::Kind::EventuallyPeriodic);
  REQUIRE(sw.periodic.has_value());
  CHECK(sw.periodic->second == 2);
}

TEST_CASE("realizability reports") {
  const Bounds b;
  const auto sh = LocalRule::builtin("shift", kBin);
  const auto id = LocalRule::builtin("identity", kBin);
  const auto eo = realizability_report(Sft::from_forbidden(kBin, {kBin.parse_word("00"), kBin.parse_word("11")}),
                                       nullptr, b);
  CHECK(eo.excluded());
  bool cites = false;
  for (const auto& line : eo.lines)
    if (line.excludes && line.consequence.find("cannot be the generic limit set") != std::string::npos) cites = true;
  CHECK(cites);

  std::set<Word> seeds;
  for (std::size_t a = 0; a <= 6; ++a) {
    Word x(a, 0);
    x.insert(x.end(), 6 - a, 1);
    seeds.insert(x);
  }
  const auto ramp = realizability_report(LanguageSample::closure(kBin, seeds, 6), &sh, b);
  CHECK(ramp.excluded());
  bool chain = false;
  for (const auto& line : ramp.lines)
    if (line.excludes && line.consequence.find("chain transitiv") != std::string::npos) chain = true;
  CHECK(chain);

  const auto ok = realizability_report(Sft::from_forbidden(kBin, {}), &id, b);
  CHECK_FALSE(ok.excluded());
  for (const auto& line : ok.lines) CHECK_FALSE(line.horizon.empty());
  CHECK(ok.csv().find("check,result,consequence,excludes,horizon") != std::string::npos);
}

TEST_CASE("property: results are pure functions of inputs and seed") {
  const auto mn = LocalRule::builtin("min", kBin);
  Bounds b;
  b.U = 6;
  b.branching = 50;  // forces sampled contexts
  b.seed = 77;
  const auto x = check_enables(mn, {kBin.parse_word("0"), 0}, kBin.parse_word("0"), b);
  const auto y = check_enables(mn, {kBin.parse_word("0"), 0}, kBin.parse_word("0"), b);
  CHECK_FALSE(x.certificate.exact);
  CHECK(x.certificate.seed == std::optional<std::uint64_t>{77});
  CHECK(x.certificate.lines() == y.certificate.lines());

  Bounds e;
  e.N = 20;
  e.period = 32;
  e.n = 4;
  e.T0 = 2;
  e.T_max = 8;
  std::mt19937_64 gen(4);
  const auto rule = oracle::to_rule(oracle::random_table(2, 1, gen));
  const auto s1 = estimate_generic_language(rule, e);
  const auto s2 = estimate_generic_language(rule, e);
  CHECK(s1.at(4) == s2.at(4));
  const auto r1 = realizability_report(s1, &rule, e);
  const auto r2 = realizability_report(s2, &rule, e);
  CHECK(r1.text() == r2.text());
  CHECK(r1.csv() == r2.csv());
}
