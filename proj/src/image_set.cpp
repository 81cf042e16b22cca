#include "glimca/image_set.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "glimca/budget.hpp"
#include "glimca/error.hpp"

namespace glimca {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (auto x : v) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

WordSetAutomaton WordSetAutomaton::from_constraints(const std::vector<std::optional<Symbol>>& cells,
                                                    std::size_t alphabet_size) {
  WordSetAutomaton a;
  a.alphabet_ = alphabet_size;
  a.counts_.assign(cells.size() + 1, 1);
  a.next_.resize(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    a.next_[j].assign(alphabet_size, -1);
    for (std::size_t s = 0; s < alphabet_size; ++s)
      if (!cells[j] || *cells[j] == s) a.next_[j][s] = 0;
  }
  return a;
}

std::size_t WordSetAutomaton::state_count() const {
  std::size_t n = 0;
  for (auto c : counts_) n += c;
  return n;
}

WordSetAutomaton WordSetAutomaton::image(const LocalRule& rule, std::uint64_t state_budget) const {
  const std::size_t A = alphabet_;
  const std::size_t w = 2 * static_cast<std::size_t>(rule.radius());
  const std::uint64_t buf_mod = saturating_pow(A, w);
  if (buf_mod > (std::uint64_t{1} << 32)) throw BudgetError("rule neighborhood too large for exact image");

  WordSetAutomaton out;
  out.alphabet_ = A;
  const std::size_t L = length();
  if (empty_ || L < w) {
    out.empty_ = true;
    out.counts_.assign(1, 0);
    return out;
  }
  const std::size_t Lp = L - w;

  // Elements are (old state, last w symbols) packed as state * buf_mod + buffer.
  std::vector<std::uint64_t> current{0};
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<std::uint64_t> nxt;
    for (auto e : current) {
      const std::uint64_t q = e / buf_mod, code = e % buf_mod;
      for (std::size_t s = 0; s < A; ++s) {
        auto q2 = next_[j][q * A + s];
        if (q2 < 0) continue;
        nxt.push_back(static_cast<std::uint64_t>(q2) * buf_mod + (code * A + s) % buf_mod);
      }
    }
    std::sort(nxt.begin(), nxt.end());
    nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
    current = std::move(nxt);
    if (current.size() > state_budget) throw BudgetError("exactness unavailable at this horizon");
  }

  std::vector<std::vector<std::uint64_t>> layer{current};
  out.counts_.push_back(1);
  out.next_.resize(Lp);
  Word nb(w + 1);
  std::uint64_t total = 1;
  for (std::size_t p = 0; p < Lp; ++p) {
    const std::size_t j = w + p;
    std::unordered_map<std::vector<std::uint64_t>, std::int32_t, VectorHash> ids;
    std::vector<std::vector<std::uint64_t>> next_layer;
    out.next_[p].assign(layer.size() * A, -1);
    std::vector<std::vector<std::uint64_t>> by_output(A);
    for (std::size_t si = 0; si < layer.size(); ++si) {
      for (auto& v : by_output) v.clear();
      for (auto e : layer[si]) {
        const std::uint64_t q = e / buf_mod, code = e % buf_mod;
        for (std::size_t s = 0; s < A; ++s) {
          auto q2 = next_[j][q * A + s];
          if (q2 < 0) continue;
          const std::uint64_t full = code * A + s;
          Symbol o;
          if (rule.is_dense()) {
            o = rule.table()[full];
          } else {
            std::uint64_t c = full;
            for (std::size_t k = w + 1; k-- > 0;) {
              nb[k] = static_cast<Symbol>(c % A);
              c /= A;
            }
            o = rule.apply(nb);
          }
          by_output[o].push_back(static_cast<std::uint64_t>(q2) * buf_mod + full % buf_mod);
        }
      }
      for (std::size_t o = 0; o < A; ++o) {
        auto& v = by_output[o];
        if (v.empty()) continue;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        auto [it, inserted] = ids.emplace(v, static_cast<std::int32_t>(next_layer.size()));
        if (inserted) {
          next_layer.push_back(v);
          if (++total > state_budget) throw BudgetError("exactness unavailable at this horizon");
        }
        out.next_[p][si * A + o] = it->second;
      }
    }
    out.counts_.push_back(next_layer.size());
    layer = std::move(next_layer);
  }
  out.minimize();
  return out;
}

void WordSetAutomaton::minimize() {
  const std::size_t L = length();
  if (empty_) return;
  // All final-layer states accept; merge them, then merge by signature backwards.
  std::vector<std::int32_t> cls(counts_[L], 0);
  std::size_t ncls = counts_[L] > 0 ? 1 : 0;
  for (std::size_t j = L; j-- > 0;) {
    std::map<std::vector<std::int32_t>, std::int32_t> sig;
    std::vector<std::int32_t> new_cls(counts_[j]);
    std::vector<std::vector<std::int32_t>> rows;
    for (std::size_t q = 0; q < counts_[j]; ++q) {
      std::vector<std::int32_t> row(alphabet_);
      for (std::size_t s = 0; s < alphabet_; ++s) {
        auto t = next_[j][q * alphabet_ + s];
        row[s] = t < 0 ? -1 : cls[t];
      }
      auto [it, inserted] = sig.emplace(row, static_cast<std::int32_t>(rows.size()));
      if (inserted) rows.push_back(row);
      new_cls[q] = it->second;
    }
    next_[j].clear();
    for (auto& r : rows) next_[j].insert(next_[j].end(), r.begin(), r.end());
    counts_[j + 1] = ncls;
    ncls = rows.size();
    cls = std::move(new_cls);
  }
  counts_[0] = ncls;
}

bool WordSetAutomaton::admits(const Word& pattern, std::size_t at) const {
  if (empty_) return false;
  if (at + pattern.size() > length()) throw PreconditionError("pattern outside automaton window");
  // Every state is reachable, so any state of layer `at` can start the pattern.
  std::vector<char> live(counts_[at], 1);
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const std::size_t j = at + k;
    std::vector<char> nxt(counts_[j + 1], 0);
    bool any = false;
    for (std::size_t q = 0; q < counts_[j]; ++q) {
      if (!live[q]) continue;
      auto t = next_[j][q * alphabet_ + pattern[k]];
      if (t >= 0) nxt[t] = any = true;
    }
    if (!any) return false;
    live = std::move(nxt);
  }
  return true;
}

std::set<Word> WordSetAutomaton::words(std::uint64_t limit) const {
  std::set<Word> out;
  if (empty_) return out;
  const std::size_t L = length();
  Word cur(L);
  std::vector<std::pair<std::int32_t, std::size_t>> stack;  // (state, next symbol to try) per depth
  if (L == 0) {
    out.insert(Word{});
    return out;
  }
  stack.emplace_back(0, 0);
  while (!stack.empty()) {
    const std::size_t depth = stack.size() - 1;
    auto& [q, s] = stack.back();
    if (s >= alphabet_) {
      stack.pop_back();
      continue;
    }
    const std::size_t sym = s++;
    auto t = next_[depth][q * alphabet_ + sym];
    if (t < 0) continue;
    cur[depth] = static_cast<Symbol>(sym);
    if (depth + 1 == L) {
      out.insert(cur);
      if (out.size() > limit) throw BudgetError("image set has more words than the enumeration budget");
    } else {
      stack.emplace_back(t, 0);
    }
  }
  return out;
}

namespace {

WordSetAutomaton initial_window(const LocalRule& rule, const Cylinder& cyl, std::int64_t lo,
                                std::int64_t hi) {
  std::vector<std::optional<Symbol>> cells(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < cyl.word.size(); ++k) {
    const std::int64_t pos = cyl.position + static_cast<std::int64_t>(k);
    if (cyl.word[k] >= rule.alphabet().size()) throw PreconditionError("alphabet mismatch: symbol out of range");
    if (pos >= lo && pos <= hi) cells[pos - lo] = cyl.word[k];
  }
  return WordSetAutomaton::from_constraints(cells, rule.alphabet().size());
}

}  // namespace

std::set<Word> cylinder_image_set(const LocalRule& rule, const Cylinder& cyl, int steps,
                                  std::int64_t first, std::int64_t last) {
  if (steps < 0) throw PreconditionError("steps must be >= 0");
  if (first > last) throw PreconditionError("window must satisfy a <= b");
  if (cyl.word.empty()) throw PreconditionError("cylinder word must be nonempty");
  const std::int64_t cone = static_cast<std::int64_t>(rule.radius()) * steps;
  auto a = initial_window(rule, cyl, first - cone, last + cone);
  const std::uint64_t budget = enumeration_budget();
  for (int t = 0; t < steps; ++t) a = a.image(rule, budget);
  return a.words(budget);
}

std::vector<bool> cylinder_hits(const LocalRule& rule, const Cylinder& cyl, const Word& pattern,
                                std::int64_t at, int horizon) {
  if (horizon < 0) throw PreconditionError("horizon must be >= 0");
  if (pattern.empty()) throw PreconditionError("pattern must be nonempty");
  const std::int64_t cone = static_cast<std::int64_t>(rule.radius()) * horizon;
  const std::int64_t lo = at - cone;
  auto a = initial_window(rule, cyl, lo, at + static_cast<std::int64_t>(pattern.size()) - 1 + cone);
  const std::uint64_t budget = enumeration_budget();
  std::vector<bool> hits;
  for (int t = 0; t <= horizon; ++t) {
    const std::size_t offset = static_cast<std::size_t>(rule.radius()) * (horizon - t);
    hits.push_back(a.admits(pattern, offset));
    if (t < horizon) a = a.image(rule, budget);
  }
  return hits;
}

}  // namespace glimca
