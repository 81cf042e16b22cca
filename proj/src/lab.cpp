#include "glimca/lab.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "glimca/budget.hpp"
#include "glimca/error.hpp"
#include "glimca/image_set.hpp"

namespace glimca {

namespace {

std::string shown(const Alphabet& a, const Word& w) { return w.empty() ? "(empty)" : a.show(w); }

// All words of length <= max_len, by length then lexicographically.
std::vector<Word> words_upto(std::size_t alphabet, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    const std::uint64_t count = saturating_pow(alphabet, len);
    for (std::uint64_t c = 0; c < count; ++c) out.push_back(word_from_code(c, len, alphabet));
  }
  return out;
}

Word concat(const Word& a, const Word& b, const Word& c) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

void Bounds::validate() const {
  if (U == 0 || T_max <= 0 || K == 0 || branching == 0 || N == 0 || T0 < 0 || period == 0 || threads == 0 ||
      m_max <= 0)
    throw PreconditionError("bounds must be positive");
  if (K > static_cast<std::size_t>(T_max)) throw PreconditionError("bounds need K <= T_max");
  if (T0 > T_max) throw PreconditionError("bounds need T0 <= T_max");
}

std::string Bounds::describe() const {
  std::ostringstream os;
  os << "U=" << U << " T_max=" << T_max << " K=" << K << " branching=" << branching << " N=" << N << " T0=" << T0
     << " n=" << n << " period=" << period << " m_max=" << m_max << " seed=" << seed;
  return os.str();
}

std::string Certificate::kind_name() const {
  switch (kind) {
    case Kind::Forcing: return "forcing";
    case Kind::EnablingSupported: return "enabling-supported";
    case Kind::EnablingRefuted: return "enabling-refuted";
    case Kind::Classification: return "classification";
  }
  return "?";
}

std::vector<std::string> Certificate::lines() const {
  std::ostringstream head;
  head << "certificate " << kind_name() << " horizon=" << horizon << " " << (exact ? "exact" : "sampled");
  if (seed) head << " seed=" << *seed;
  std::vector<std::string> out{head.str()};
  for (const auto& w : witness) out.push_back("  " + w);
  return out;
}

std::string verdict_name(EnablingResult::Verdict v) {
  switch (v) {
    case EnablingResult::Verdict::Supported: return "supported";
    case EnablingResult::Verdict::RefutedAtBound: return "refuted-at-bound";
    case EnablingResult::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------

EnablingResult check_enables(const LocalRule& rule, const Cylinder& v, const Word& s, const Bounds& bounds) {
  bounds.validate();
  if (v.word.empty() || s.empty()) throw PreconditionError("v and s must be nonempty");
  const Alphabet& alpha = rule.alphabet();
  const std::size_t a = alpha.size();
  for (Symbol x : v.word)
    if (x >= a) throw PreconditionError("v is not over the rule alphabet");
  for (Symbol x : s)
    if (x >= a) throw PreconditionError("s is not over the rule alphabet");

  const std::vector<Word> side = [&] {
    std::uint64_t total = 0;
    for (std::size_t len = 0; len <= bounds.U; ++len) total += saturating_pow(a, len);
    if (total * total <= bounds.branching) return words_upto(a, bounds.U);
    return std::vector<Word>{};
  }();
  const bool exact = !side.empty();

  std::vector<std::pair<Word, Word>> contexts;
  if (exact) {
    for (std::size_t total = 0; total <= 2 * bounds.U; ++total)
      for (const Word& u : side)
        for (const Word& w : side)
          if (u.size() + w.size() == total) contexts.emplace_back(u, w);
  } else {
    std::seed_seq seq{static_cast<std::uint32_t>(bounds.seed), static_cast<std::uint32_t>(bounds.seed >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_int_distribution<std::size_t> len(0, bounds.U);
    std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(a - 1));
    auto draw = [&] {
      Word w(len(gen));
      for (auto& x : w) x = sym(gen);
      return w;
    };
    for (std::size_t i = 0; i < bounds.branching; ++i) {
      Word u = draw();
      Word w = draw();
      contexts.emplace_back(std::move(u), std::move(w));
    }
  }

  EnablingResult res;
  res.certificate.horizon = bounds.T_max;
  res.certificate.exact = exact;
  if (!exact) res.certificate.seed = bounds.seed;
  const int terminal_from = bounds.T_max - static_cast<int>(bounds.K) + 1;

  std::optional<std::pair<Word, Word>> weak;
  std::vector<int> weak_hits;
  for (const auto& [u, w] : contexts) {
    const Cylinder cyl{concat(u, v.word, w), v.position - static_cast<std::int64_t>(u.size())};
    const auto hits = cylinder_hits(rule, cyl, s, 0, bounds.T_max);
    ++res.contexts;
    std::vector<int> times;
    for (int t = 0; t <= bounds.T_max; ++t)
      if (hits[t]) times.push_back(t);
    const bool terminal = !times.empty() && times.back() >= terminal_from;
    if (!terminal) {
      res.verdict = EnablingResult::Verdict::RefutedAtBound;
      res.witness = {u, w};
      res.witness_hits = times;
      break;
    }
    if (times.size() < bounds.K && !weak) {
      weak = {u, w};
      weak_hits = times;
    }
  }
  if (res.verdict != EnablingResult::Verdict::RefutedAtBound) {
    if (weak) {
      res.verdict = EnablingResult::Verdict::Inconclusive;
      res.witness = weak;
      res.witness_hits = weak_hits;
    } else {
      res.verdict = EnablingResult::Verdict::Supported;
    }
  }

  auto& wit = res.certificate.witness;
  res.certificate.kind = res.verdict == EnablingResult::Verdict::RefutedAtBound ? Certificate::Kind::EnablingRefuted
                                                                                 : Certificate::Kind::EnablingSupported;
  wit.push_back("v=" + shown(alpha, v.word) + " at " + std::to_string(v.position) + ", s=" + shown(alpha, s) + " at 0");
  wit.push_back("contexts=" + std::to_string(res.contexts) + (exact ? " (all |u|,|w| <= " : " (sampled, |u|,|w| <= ") +
                std::to_string(bounds.U) + ")");
  wit.push_back("rule: K=" + std::to_string(bounds.K) + " hits in [0," + std::to_string(bounds.T_max) +
                "], refuted when none in [" + std::to_string(terminal_from) + "," + std::to_string(bounds.T_max) + "]");
  if (res.witness) {
    std::string times;
    for (int t : res.witness_hits) times += (times.empty() ? "" : " ") + std::to_string(t);
    wit.push_back("witness u=" + shown(alpha, res.witness->first) + " w=" + shown(alpha, res.witness->second) +
                  " hits at t={" + times + "}");
  }
  return res;
}

// ---------------------------------------------------------------------------

ForcingResult search_forcing_word(const LocalRule& rule, const Cylinder& seed, std::size_t n, const Bounds& bounds,
                                  const LanguageSample& oracle) {
  bounds.validate();
  if (n == 0) throw PreconditionError("forcing window must be positive");
  if (seed.word.empty()) throw PreconditionError("seed word must be nonempty");
  if (oracle.max_length < n) throw PreconditionError("oracle does not cover length n");
  const Alphabet& alpha = rule.alphabet();
  const std::size_t a = alpha.size();
  const std::uint64_t total = saturating_pow(a, n);
  if (total > enumeration_budget()) throw BudgetError("too many n-words to enumerate");

  std::set<Word> allowed;
  for (const Word& w : oracle.at(n)) allowed.insert(translate(w, oracle.alphabet, alpha));
  std::vector<Word> forbidden;
  for (std::uint64_t c = 0; c < total; ++c) {
    Word w = word_from_code(c, n, a);
    if (!allowed.count(w)) forbidden.push_back(std::move(w));
  }

  const int last_start = bounds.T_max - static_cast<int>(bounds.K) + 1;
  // Earliest T with no hit in [T, T_max], if it leaves a window of K steps.
  auto kill_time = [&](const Cylinder& cyl, const Word& u) -> std::optional<int> {
    const auto hits = cylinder_hits(rule, cyl, u, 0, bounds.T_max);
    int t = bounds.T_max;
    while (t >= 0 && !hits[t]) --t;
    if (t + 1 > last_start) return std::nullopt;
    return t + 1;
  };

  ForcingResult res;
  res.cylinder = seed;
  res.certificate.kind = Certificate::Kind::Forcing;
  res.certificate.horizon = bounds.T_max;
  auto& wit = res.certificate.witness;
  wit.push_back("seed " + shown(alpha, seed.word) + " at " + std::to_string(seed.position) + ", n=" +
                std::to_string(n) + ", forbidden n-words=" + std::to_string(forbidden.size()));

  for (const Word& u : forbidden) {
    auto ti = kill_time(res.cylinder, u);
    std::size_t tried = 0;
    for (std::size_t len = 1; !ti; ++len) {
      for (std::size_t la = 0; la <= len && !ti; ++la) {
        const std::size_t lb = len - la;
        const std::uint64_t ca = saturating_pow(a, la), cb = saturating_pow(a, lb);
        for (std::uint64_t i = 0; i < ca && !ti; ++i)
          for (std::uint64_t j = 0; j < cb && !ti; ++j) {
            if (++tried > bounds.branching) {
              res.unkillable = u;
              wit.push_back("not found: " + shown(alpha, u) + " survives every extension tried (" +
                            std::to_string(bounds.branching) + ")");
              return res;
            }
            const Word pre = word_from_code(i, la, a), post = word_from_code(j, lb, a);
            const Cylinder cand{concat(pre, res.cylinder.word, post),
                                res.cylinder.position - static_cast<std::int64_t>(la)};
            if (auto k = kill_time(cand, u)) {
              res.cylinder = cand;
              ti = k;
            }
          }
      }
    }
    res.T = std::max(res.T, *ti);
    wit.push_back("forbid " + shown(alpha, u) + ": absent for t in [" + std::to_string(*ti) + "," +
                  std::to_string(bounds.T_max) + "] from " + shown(alpha, res.cylinder.word) + " at " +
                  std::to_string(res.cylinder.position));
  }
  res.found = true;
  wit.push_back("result " + shown(alpha, res.cylinder.word) + " at " + std::to_string(res.cylinder.position) +
                ", T=" + std::to_string(res.T) + "; verified only up to T_max=" + std::to_string(bounds.T_max));
  return res;
}

// ---------------------------------------------------------------------------

LanguageSample estimate_generic_language(const LocalRule& rule, const Bounds& bounds) {
  bounds.validate();
  const Alphabet& alpha = rule.alphabet();
  const std::size_t a = alpha.size();
  const std::size_t n = bounds.n;

  LanguageSample out;
  if (n == 0) {
    out.alphabet = alpha;
    out.words[0] = {Word{}};
    out.max_length = 0;
  } else {
    const std::uint64_t codes = saturating_pow(a, n);
    const bool dense = codes <= kDenseTableCap;

    struct Seen {
      std::vector<char> flags;
      std::set<Word> words;
    };
    auto sample_range = [&](std::size_t begin, std::size_t end, Seen& seen) {
      if (dense) seen.flags.assign(codes, 0);
      Word x(bounds.period);
      for (std::size_t i = begin; i < end; ++i) {
        std::seed_seq seq{static_cast<std::uint32_t>(bounds.seed), static_cast<std::uint32_t>(bounds.seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
        std::mt19937_64 gen(seq);
        std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(a - 1));
        for (auto& c : x) c = sym(gen);
        for (int t = 0; t <= bounds.T_max; ++t) {
          if (t >= bounds.T0) {
            for (std::size_t p = 0; p < x.size(); ++p) {
              if (dense) {
                std::uint64_t code = 0;
                for (std::size_t j = 0; j < n; ++j) code = code * a + x[(p + j) % x.size()];
                seen.flags[code] = 1;
              } else {
                Word w(n);
                for (std::size_t j = 0; j < n; ++j) w[j] = x[(p + j) % x.size()];
                seen.words.insert(std::move(w));
              }
            }
          }
          if (t < bounds.T_max) x = apply_cyclic(rule, x);
        }
      }
    };

    const unsigned threads = std::min<unsigned>(bounds.threads, static_cast<unsigned>(bounds.N));
    std::vector<Seen> parts(threads);
    if (threads == 1) {
      sample_range(0, bounds.N, parts[0]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < threads; ++k) {
        const std::size_t b = bounds.N * k / threads, e = bounds.N * (k + 1) / threads;
        pool.emplace_back(sample_range, b, e, std::ref(parts[k]));
      }
      for (auto& th : pool) th.join();
    }
    std::set<Word> seeds;
    for (const auto& part : parts) {
      seeds.insert(part.words.begin(), part.words.end());
      for (std::uint64_t c = 0; c < part.flags.size(); ++c)
        if (part.flags[c]) seeds.insert(word_from_code(c, n, a));
    }
    out = LanguageSample::closure(alpha, seeds, n);
  }
  out.sampled = LanguageSample::Sampled{"N=" + std::to_string(bounds.N) + " period=" + std::to_string(bounds.period) +
                                           " T0=" + std::to_string(bounds.T0) + " T_max=" + std::to_string(bounds.T_max),
                                       bounds.seed};
  return out;
}

// ---------------------------------------------------------------------------

std::string Neighborhood::str() const {
  if (empty) return "{}";
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::string classification_kind_name(Classification::Kind k) {
  switch (k) {
    case Classification::Kind::Identity: return "identity";
    case Classification::Kind::Shift: return "shift";
    case Classification::Kind::EventuallyPeriodic: return "eventually-periodic";
    case Classification::Kind::EventuallyOblique: return "eventually-oblique";
    case Classification::Kind::Other: return "other";
  }
  return "?";
}

std::string Classification::label() const {
  switch (kind) {
    case Kind::Shift: return "shift(" + std::to_string(shift) + ")";
    case Kind::EventuallyPeriodic:
      return "eventually-periodic(" + std::to_string(periodic->first) + "," + std::to_string(periodic->second) + ")";
    default: return classification_kind_name(kind);
  }
}

namespace {

std::vector<Word> translated_language(const Sft& sft, std::size_t k, const Alphabet& to) {
  const auto lang = sft.language(k);
  if (lang.size() > enumeration_budget()) throw BudgetError("subshift language too large for the classifier");
  std::vector<Word> out;
  out.reserve(lang.size());
  for (const Word& w : lang) out.push_back(translate(w, sft.alphabet(), to));
  return out;
}

// Smallest interval [lo, hi] within [-R, R] on which `out` depends.
Neighborhood minimal_neighborhood(const std::vector<Word>& words, const std::vector<Symbol>& out, int R) {
  auto valid = [&](int lo, int hi) {
    std::map<Word, Symbol> seen;
    for (std::size_t i = 0; i < words.size(); ++i) {
      Word key;
      if (lo <= hi) key.assign(words[i].begin() + (lo + R), words[i].begin() + (hi + R + 1));
      auto [it, fresh] = seen.emplace(std::move(key), out[i]);
      if (!fresh && it->second != out[i]) return false;
    }
    return true;
  };
  if (valid(1, 0)) return {0, 0, true};
  // Narrowest first; among equal widths, the one nearest the origin.
  for (int width = 1; width <= 2 * R + 1; ++width) {
    std::vector<int> los;
    for (int lo = -R; lo + width - 1 <= R; ++lo) los.push_back(lo);
    std::stable_sort(los.begin(), los.end(), [width](int a, int b) {
      return std::max(std::abs(a), std::abs(a + width - 1)) < std::max(std::abs(b), std::abs(b + width - 1));
    });
    for (int lo : los)
      if (valid(lo, lo + width - 1)) return {lo, lo + width - 1, false};
  }
  return {-R, R, false};
}

}  // namespace

Classification restriction_classifier(const LocalRule& rule, const Sft& sft, int m_max) {
  if (m_max < 1) throw PreconditionError("classifier horizon must be >= 1");
  if (sft.empty()) throw PreconditionError("classifier needs a nonempty subshift");
  const int r = rule.radius();
  Classification c;
  c.horizon = m_max;
  c.certificate.kind = Certificate::Kind::Classification;
  c.certificate.horizon = m_max;

  bool identity = false;
  std::optional<int> shift;
  for (int m = 1; m <= m_max; ++m) {
    const int R = r * m;
    const auto words = translated_language(sft, static_cast<std::size_t>(2 * R + 1), rule.alphabet());
    std::vector<Symbol> out;
    out.reserve(words.size());
    for (const Word& w : words) out.push_back(determined_image(rule, w, m)[0]);
    const Neighborhood nb = minimal_neighborhood(words, out, R);
    c.neighborhoods.push_back(nb);
    if (!c.oblique_power && !nb.empty && (nb.lo >= 1 || nb.hi <= -1)) c.oblique_power = m;

    if (m == 1) {
      auto agrees = [&](int k) {
        for (std::size_t i = 0; i < words.size(); ++i)
          if (out[i] != words[i][static_cast<std::size_t>(R + k)]) return false;
        return true;
      };
      identity = agrees(0);
      for (int k = 1; k <= r && !identity && !shift; ++k) {
        if (agrees(k)) shift = k;
        else if (agrees(-k)) shift = -k;
      }
    }
    c.certificate.witness.push_back("f^" + std::to_string(m) + " neighborhood " + nb.str() + " over " +
                                    std::to_string(words.size()) + " words");
  }

  // f^{k+p} = f^k on X, smallest k+p first.
  for (int s = 1; s <= m_max && !c.periodic; ++s) {
    const int R = r * s;
    const auto words = translated_language(sft, static_cast<std::size_t>(2 * R + 1), rule.alphabet());
    std::vector<Symbol> full;
    for (const Word& w : words) full.push_back(determined_image(rule, w, s)[0]);
    for (int k = 0; k < s && !c.periodic; ++k) {
      bool same = true;
      for (std::size_t i = 0; i < words.size() && same; ++i) {
        const Word img = determined_image(rule, words[i], k);
        same = img[img.size() / 2] == full[i];
      }
      if (same) c.periodic = std::make_pair(k, s - k);
    }
  }

  if (identity) c.kind = Classification::Kind::Identity;
  else if (shift) { c.kind = Classification::Kind::Shift; c.shift = *shift; }
  else if (c.periodic) c.kind = Classification::Kind::EventuallyPeriodic;
  else if (c.oblique_power) c.kind = Classification::Kind::EventuallyOblique;
  c.certificate.witness.push_back("class " + c.label() +
                                  (c.oblique_power ? ", eventually oblique from m=" + std::to_string(*c.oblique_power) : "") +
                                  (c.periodic ? ", f^" + std::to_string(c.periodic->first + c.periodic->second) + " = f^" +
                                                    std::to_string(c.periodic->first)
                                              : ""));
  return c;
}

// ---------------------------------------------------------------------------

bool AnalysisReport::excluded() const {
  return std::any_of(lines.begin(), lines.end(), [](const ReportLine& l) { return l.excludes; });
}

std::vector<std::string> AnalysisReport::text() const {
  std::vector<std::string> out;
  for (const auto& l : lines) {
    std::string s = l.check + ": " + l.result;
    if (!l.consequence.empty()) s += (l.excludes ? " -> excluded: " : " -> ") + l.consequence;
    if (!l.horizon.empty()) s += " [" + l.horizon + "]";
    out.push_back(std::move(s));
  }
  out.push_back(std::string("verdict: ") + (excluded() ? "excluded" : "no exclusions"));
  return out;
}

std::string AnalysisReport::csv() const {
  auto field = [](std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
  };
  std::string out = "check,result,consequence,excludes,horizon\n";
  for (const auto& l : lines)
    out += field(l.check) + "," + field(l.result) + "," + field(l.consequence) + "," + (l.excludes ? "1" : "0") +
           "," + field(l.horizon) + "\n";
  return out;
}

AnalysisReport realizability_report(const SubshiftInput& input, const LocalRule* rule, const Bounds& bounds) {
  AnalysisReport rep;
  const LanguageSample* sample = std::get_if<LanguageSample>(&input);
  std::string horizon = "exact";
  std::optional<Sft> approx;
  if (sample) {
    if (sample->sampled)
      horizon = "sampled seed=" + std::to_string(sample->sampled->seed) + " " + sample->sampled->params +
                " n<=" + std::to_string(sample->max_length);
    else
      horizon = "exact sample n<=" + std::to_string(sample->max_length);
    if (sample->max_length == 0) {
      rep.lines.push_back({"subshift", "no words beyond the empty word", "", false, horizon});
      return rep;
    }
    approx = sft_approximation(*sample, sample->max_length);
  }
  const Sft& x = sample ? *approx : std::get<Sft>(input);
  if (x.empty()) {
    rep.lines.push_back({"subshift", "empty", "", false, horizon});
    return rep;
  }

  const auto obs = periodic_factor_obstruction(x);
  switch (obs.kind) {
    case ObstructionVerdict::Kind::Obstructed:
      rep.lines.push_back({"periodic factor", "obstructed p=" + std::to_string(obs.period),
                           "cannot be the generic limit set", true, horizon});
      break;
    case ObstructionVerdict::Kind::Clear:
      rep.lines.push_back({"periodic factor", "clear", "", false, horizon});
      break;
    case ObstructionVerdict::Kind::Inconclusive:
      rep.lines.push_back({"periodic factor", "inconclusive", "", false, horizon});
      break;
  }

  const bool transitive = is_transitive(x);
  const bool mixing = transitive && is_mixing(x);
  rep.lines.push_back({"transitive", transitive ? "true" : "false", "", false, horizon});
  rep.lines.push_back({"mixing", mixing ? "true" : "false", "", false, horizon});

  const ChainTransitivity ct = sample ? is_chain_transitive(*sample, sample->max_length) : is_chain_transitive(x);
  rep.lines.push_back({"chain transitive",
                       ct.holds ? "true" : "false at n=" + std::to_string(ct.first_failure.value_or(0)), "", false,
                       horizon});

  const auto parts = chain_components(x, x.window());
  rep.lines.push_back({"chain components", std::to_string(parts.classes.size()) + " at n=" + std::to_string(x.window()),
                       "", false, horizon});

  if (!rule) return rep;

  const Classification cls = restriction_classifier(*rule, x, bounds.m_max);
  const std::string ch = "exact m<=" + std::to_string(bounds.m_max);
  ReportLine line{"restriction", cls.label(), "", false, ch};
  if (cls.kind == Classification::Kind::Identity && !mixing) {
    line.consequence = "identity restriction requires a mixing generic limit set";
    line.excludes = true;
  } else if (cls.kind == Classification::Kind::Shift && !ct.holds) {
    line.consequence = "shift restriction requires chain transitivity";
    line.excludes = true;
  } else if (cls.kind == Classification::Kind::Identity || cls.kind == Classification::Kind::EventuallyPeriodic) {
    line.consequence = "equicontinuous restriction: the language would be Sigma^0_1 (cited; not computed)";
  } else if (cls.oblique_power) {
    line.consequence = "eventually oblique restriction: the language would be Pi^0_2 (cited; not computed)";
  }
  rep.lines.push_back(line);
  if (cls.oblique_power)
    rep.lines.push_back({"eventually oblique", "f^" + std::to_string(*cls.oblique_power) + " neighborhood " +
                                                   cls.neighborhoods[*cls.oblique_power - 1].str(),
                         "", false, ch});

  const auto perm = component_permutation(*rule, x, x.window());
  ReportLine pl{"component permutation", "", "", false, horizon};
  if (!perm.invariant) {
    pl.result = "some component image straddles classes";
  } else {
    std::string map;
    for (std::size_t i = 0; i < perm.image.size(); ++i)
      map += (i ? " " : "") + std::to_string(i + 1) + "->" + std::to_string(*perm.image[i] + 1);
    pl.result = map + (perm.cyclic ? " (cyclic)" : perm.permutation ? " (not cyclic)" : " (not a permutation)");
    if (!perm.cyclic) {
      pl.consequence = "chain components must be permuted cyclically";
      pl.excludes = true;
    }
  }
  rep.lines.push_back(pl);
  return rep;
}

}  // namespace glimca
