#include "glimca/sft.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "glimca/budget.hpp"
#include "glimca/engine.hpp"
#include "glimca/error.hpp"

namespace glimca {

// ---------------------------------------------------------------------------
// LanguageSample

const std::set<Word>& LanguageSample::at(std::size_t length) const {
  static const std::set<Word> kEmpty;
  auto it = words.find(length);
  return it == words.end() ? kEmpty : it->second;
}

bool LanguageSample::is_factor_closed() const {
  for (const auto& [len, ws] : words) {
    if (len == 0 || len > max_length) continue;
    const auto& shorter = at(len - 1);
    for (const auto& w : ws) {
      Word a(w.begin() + 1, w.end()), b(w.begin(), w.end() - 1);
      if (!shorter.count(a) || !shorter.count(b)) return false;
    }
  }
  return true;
}

LanguageSample LanguageSample::closure(Alphabet alphabet, const std::set<Word>& seeds,
                                       std::size_t max_length) {
  LanguageSample s;
  s.alphabet = std::move(alphabet);
  s.max_length = max_length;
  for (std::size_t k = 0; k <= max_length; ++k) s.words[k];
  for (const auto& w : seeds) {
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t k = 1; k <= max_length && i + k <= w.size(); ++k)
        s.words[k].insert(Word(w.begin() + i, w.begin() + i + k));
  }
  bool any = false;
  for (const auto& [k, ws] : s.words) any = any || !ws.empty();
  if (any || !seeds.empty()) s.words[0].insert(Word{});
  return s;
}

// ---------------------------------------------------------------------------
// Sft construction and pruning

namespace {

bool has_factor(const Word& w, const Word& f) {
  if (f.size() > w.size()) return false;
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

}  // namespace

Sft Sft::from_forbidden(Alphabet alphabet, const std::vector<Word>& forbidden) {
  std::size_t n = 2;
  for (const auto& f : forbidden) {
    if (f.empty()) throw PreconditionError("forbidden words must be nonempty");
    n = std::max(n, f.size());
  }
  const std::uint64_t total = saturating_pow(alphabet.size(), n);
  if (total > enumeration_budget()) throw BudgetError("SFT window too large to enumerate");
  std::vector<Word> allowed;
  for (std::uint64_t c = 0; c < total; ++c) {
    Word w = word_from_code(c, n, alphabet.size());
    bool ok = std::none_of(forbidden.begin(), forbidden.end(), [&](const Word& f) { return has_factor(w, f); });
    if (ok) allowed.push_back(std::move(w));
  }
  return from_allowed(std::move(alphabet), n, std::move(allowed));
}

Sft Sft::from_allowed(Alphabet alphabet, std::size_t window, std::vector<Word> allowed) {
  if (window == 0) throw PreconditionError("SFT window must be >= 1");
  for (const auto& w : allowed) {
    if (w.size() != window) throw PreconditionError("allowed word length differs from window");
    for (Symbol s : w)
      if (s >= alphabet.size()) throw PreconditionError("allowed word symbol outside alphabet");
  }
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  Sft sft;
  sft.alphabet_ = std::move(alphabet);
  sft.window_ = window;
  sft.allowed_ = std::move(allowed);
  sft.build();
  return sft;
}

void Sft::build() {
  std::map<Word, int> ids;
  auto vertex = [&](Word w) {
    auto [it, inserted] = ids.emplace(w, static_cast<int>(vertices_.size()));
    if (inserted) vertices_.push_back(std::move(w));
    return it->second;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < allowed_.size(); ++i) {
    const Word& w = allowed_[i];
    int a = vertex(Word(w.begin(), w.end() - 1));
    int b = vertex(Word(w.begin() + 1, w.end()));
    edges.push_back({a, b, i});
  }
  // Iteratively delete vertices with no incoming or no outgoing live edge.
  std::vector<int> in(vertices_.size(), 0), out(vertices_.size(), 0);
  std::vector<std::vector<std::size_t>> touching(vertices_.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    ++out[edges[e].from];
    ++in[edges[e].to];
    touching[edges[e].from].push_back(e);
    if (edges[e].to != edges[e].from) touching[edges[e].to].push_back(e);
  }
  std::vector<char> alive(edges.size(), 1), dead_vertex(vertices_.size(), 0);
  std::queue<int> work;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (in[v] == 0 || out[v] == 0) {
      dead_vertex[v] = 1;
      work.push(static_cast<int>(v));
    }
  while (!work.empty()) {
    int v = work.front();
    work.pop();
    for (auto e : touching[v]) {
      if (!alive[e]) continue;
      alive[e] = 0;
      int a = edges[e].from, b = edges[e].to;
      --out[a];
      --in[b];
      for (int u : {a, b})
        if (!dead_vertex[u] && (in[u] == 0 || out[u] == 0)) {
          dead_vertex[u] = 1;
          work.push(u);
        }
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (alive[e]) pruned_.push_back(edges[e]);
  pruned_count_ = pruned_.size();
}

std::vector<Word> Sft::pruned_words() const {
  std::vector<Word> out;
  for (const auto& e : pruned_) out.push_back(allowed_[e.word]);
  return out;
}

std::set<Word> Sft::language(std::size_t k) const {
  std::set<Word> out;
  if (empty()) return out;
  if (k == 0) return {Word{}};
  if (k <= window_) {
    for (const auto& e : pruned_) {
      const Word& w = allowed_[e.word];
      for (std::size_t i = 0; i + k <= w.size(); ++i) out.insert(Word(w.begin() + i, w.begin() + i + k));
    }
    return out;
  }
  std::vector<std::vector<std::size_t>> succ(vertices_.size());
  for (std::size_t e = 0; e < pruned_.size(); ++e) succ[pruned_[e].from].push_back(e);
  // Frontier of (word, last vertex).
  std::vector<std::pair<Word, int>> frontier;
  for (const auto& e : pruned_) frontier.emplace_back(allowed_[e.word], e.to);
  const std::uint64_t budget = enumeration_budget();
  for (std::size_t len = window_; len < k; ++len) {
    std::vector<std::pair<Word, int>> next;
    for (const auto& [w, v] : frontier)
      for (auto e : succ[v]) {
        Word x = w;
        x.push_back(allowed_[pruned_[e].word].back());
        next.emplace_back(std::move(x), pruned_[e].to);
        if (next.size() > budget) throw BudgetError("language enumeration exceeds budget");
      }
    frontier = std::move(next);
  }
  for (auto& [w, v] : frontier) out.insert(std::move(w));
  return out;
}

// ---------------------------------------------------------------------------
// Graph analysis

namespace {

/// Kosaraju over vertices touched by pruned edges. Returns component id per
/// vertex (-1 for untouched vertices) and the component count.
std::pair<std::vector<int>, int> strong_components(const Sft& sft) {
  const std::size_t nv = sft.vertices().size();
  std::vector<std::vector<int>> fwd(nv), bwd(nv);
  std::vector<char> touched(nv, 0);
  for (const auto& e : sft.pruned_edges()) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
    touched[e.from] = touched[e.to] = 1;
  }
  std::vector<int> order;
  std::vector<char> seen(nv, 0);
  for (std::size_t s = 0; s < nv; ++s) {
    if (!touched[s] || seen[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < fwd[v].size()) {
        int u = fwd[v][i++];
        if (!seen[u]) {
          seen[u] = 1;
          stack.emplace_back(u, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(nv, -1);
  int count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != -1) continue;
    std::vector<int> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : bwd[v])
        if (comp[u] == -1) {
          comp[u] = count;
          stack.push_back(u);
        }
    }
    ++count;
  }
  return {comp, count};
}

void require_nonempty(const Sft& sft) {
  if (sft.empty()) throw PreconditionError("empty subshift");
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<IrreducibleComponent> irreducible_components(const Sft& sft) {
  require_nonempty(sft);
  auto [comp, count] = strong_components(sft);
  std::vector<IrreducibleComponent> out(count);
  std::vector<char> has_edge(count, 0);
  for (std::size_t v = 0; v < comp.size(); ++v)
    if (comp[v] >= 0) out[comp[v]].vertices.push_back(static_cast<int>(v));
  // BFS levels inside each component; period = gcd of level defects on internal edges.
  std::vector<std::vector<int>> fwd(comp.size());
  for (const auto& e : sft.pruned_edges())
    if (comp[e.from] == comp[e.to]) {
      fwd[e.from].push_back(e.to);
      has_edge[comp[e.from]] = 1;
    }
  std::vector<long> level(comp.size(), -1);
  for (auto& c : out) {
    const int root = c.vertices.front();
    level[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : fwd[v])
        if (level[u] < 0) {
          level[u] = level[v] + 1;
          q.push(u);
        }
    }
    std::size_t g = 0;
    for (int v : c.vertices)
      for (int u : fwd[v]) g = std::gcd(g, static_cast<std::size_t>(std::labs(level[v] + 1 - level[u])));
    c.period = g;
  }
  std::vector<IrreducibleComponent> result;
  for (int i = 0; i < count; ++i)
    if (has_edge[i]) result.push_back(std::move(out[i]));
  std::sort(result.begin(), result.end(), [&](const auto& a, const auto& b) {
    return sft.vertices()[a.vertices.front()] < sft.vertices()[b.vertices.front()];
  });
  for (auto& c : result)
    std::sort(c.vertices.begin(), c.vertices.end(),
              [&](int a, int b) { return sft.vertices()[a] < sft.vertices()[b]; });
  return result;
}

bool is_transitive(const Sft& sft) {
  require_nonempty(sft);
  auto [comp, count] = strong_components(sft);
  return count == 1;
}

std::vector<std::size_t> sigma_period(const Sft& sft) {
  std::vector<std::size_t> out;
  for (const auto& c : irreducible_components(sft)) out.push_back(c.period);
  return out;
}

bool is_mixing(const Sft& sft) {
  if (!is_transitive(sft)) return false;
  auto periods = sigma_period(sft);
  return periods.size() == 1 && periods[0] == 1;
}

Sft sft_approximation(const LanguageSample& sample, std::size_t n) {
  if (n == 0) throw PreconditionError("approximation order must be >= 1");
  if (n > sample.max_length)
    throw PreconditionError("order " + std::to_string(n) + " exceeds sample max length " +
                            std::to_string(sample.max_length));
  const auto& ws = sample.at(n);
  return Sft::from_allowed(sample.alphabet, n, std::vector<Word>(ws.begin(), ws.end()));
}

ChainTransitivity is_chain_transitive(const LanguageSample& sample, std::size_t horizon) {
  if (horizon > sample.max_length) throw PreconditionError("horizon exceeds sample max length");
  ChainTransitivity r;
  r.horizon = horizon;
  for (std::size_t n = 1; n <= horizon; ++n) {
    Sft s = sft_approximation(sample, n);
    if (s.empty() || !is_transitive(s)) {
      r.first_failure = n;
      return r;
    }
  }
  r.holds = true;
  return r;
}

ChainTransitivity is_chain_transitive(const Sft& sft) {
  require_nonempty(sft);
  LanguageSample sample;
  sample.alphabet = sft.alphabet();
  sample.max_length = sft.window();
  for (std::size_t k = 0; k <= sft.window(); ++k) sample.words[k] = sft.language(k);
  return is_chain_transitive(sample, sft.window());
}

// ---------------------------------------------------------------------------
// Chain components

std::optional<std::size_t> ComponentPartition::class_of(const Word& w) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::binary_search(classes[i].begin(), classes[i].end(), w)) return i;
  return std::nullopt;
}

namespace {

/// Classes of the symmetric-transitive closure of "v occurs k >= 0 cells to
/// the right of u in some point". Works in the m-block presentation,
/// m = max(n, window), whose pruned paths are exactly the points of X.
std::vector<std::vector<Word>> chain_classes(const Sft& sft, std::size_t n, std::size_t m) {
  auto nwords = sft.language(n);
  std::vector<Word> words(nwords.begin(), nwords.end());
  auto id = [&](const Word& w) {
    return static_cast<int>(std::lower_bound(words.begin(), words.end(), w) - words.begin());
  };
  Dsu dsu(words.size());
  // Reachability pairs: an (m+1)-word links the n-prefixes of its two m-vertices;
  // k = 0 pairs inside one vertex are covered by chaining these links.
  for (const auto& e : sft.language(m + 1)) {
    Word u(e.begin(), e.begin() + n), v(e.begin() + 1, e.begin() + 1 + n);
    dsu.unite(id(u), id(v));
  }
  for (const auto& e : sft.language(m))
    for (std::size_t k = 1; k + n <= m; ++k)
      dsu.unite(id(Word(e.begin(), e.begin() + n)), id(Word(e.begin() + k, e.begin() + k + n)));
  std::map<int, std::vector<Word>> groups;
  for (const auto& w : words) groups[dsu.find(id(w))].push_back(w);
  std::vector<std::vector<Word>> classes;
  for (auto& [root, ws] : groups) classes.push_back(std::move(ws));
  std::sort(classes.begin(), classes.end());
  return classes;
}

}  // namespace

ComponentPartition chain_components(const Sft& sft, std::size_t n) {
  require_nonempty(sft);
  if (n == 0) throw PreconditionError("chain width must be >= 1");
  const std::size_t m = std::max(n, sft.window());
  ComponentPartition p;
  p.width = n;
  p.classes = chain_classes(sft, n, m);

  const auto mwords = sft.language(m);
  for (const auto& cls : p.classes) {
    std::vector<Word> allowed;
    for (const auto& w : mwords)
      if (std::binary_search(cls.begin(), cls.end(), Word(w.begin(), w.begin() + n))) allowed.push_back(w);
    p.component_sfts.push_back(Sft::from_allowed(sft.alphabet(), m, std::move(allowed)));
  }

  // Partition property: disjoint classes covering L_n, each chain transitive.
  std::size_t total = 0;
  for (const auto& c : p.classes) total += c.size();
  if (total != sft.language(n).size()) throw std::logic_error("chain classes do not partition L_n");
  for (const auto& c : p.component_sfts)
    if (chain_classes(c, n, m).size() != 1) throw std::logic_error("chain component is not chain transitive");
  return p;
}

// ---------------------------------------------------------------------------
// Images under a CA

Word translate(const Word& w, const Alphabet& from, const Alphabet& to) {
  if (from == to) return w;
  Word out;
  out.reserve(w.size());
  for (Symbol s : w) {
    if (!to.contains(from.name(s)))
      throw PreconditionError("symbol '" + from.name(s) + "' missing from target alphabet");
    out.push_back(to.index(from.name(s)));
  }
  return out;
}

Sft block_image(const LocalRule& rule, const Sft& sft, std::size_t n) {
  if (n == 0) throw PreconditionError("image window must be >= 1");
  std::vector<Word> images;
  for (const auto& w : sft.language(n + 2 * rule.radius()))
    images.push_back(determined_image(rule, translate(w, sft.alphabet(), rule.alphabet()), 1));
  return Sft::from_allowed(rule.alphabet(), n, std::move(images));
}

ComponentPermutation component_permutation(const LocalRule& rule, const Sft& sft, std::size_t n) {
  ComponentPermutation out;
  out.partition = chain_components(sft, n);
  const std::size_t k = out.partition.classes.size();
  out.invariant = true;
  for (std::size_t i = 0; i < k; ++i) {
    Sft img = block_image(rule, out.partition.component_sfts[i], n);
    std::optional<std::size_t> target;
    bool ok = true;
    for (const auto& w : img.language(n)) {
      std::optional<std::size_t> c;
      try {
        c = out.partition.class_of(translate(w, rule.alphabet(), sft.alphabet()));
      } catch (const PreconditionError&) {
        c.reset();
      }
      if (!c || (target && *target != *c)) {
        ok = false;
        break;
      }
      target = c;
    }
    if (!ok) {
      target.reset();
      out.invariant = false;
      if (out.note.empty())
        out.note = "image of component " + std::to_string(i + 1) + " is not contained in a single component";
    }
    out.image.push_back(target);
  }
  if (out.invariant) {
    std::vector<char> hit(k, 0);
    out.permutation = true;
    for (auto& t : out.image) {
      if (hit[*t]) out.permutation = false;
      hit[*t] = 1;
    }
    if (out.permutation) {
      std::size_t len = 0, cur = 0;
      do {
        cur = *out.image[cur];
        ++len;
      } while (cur != 0);
      out.cyclic = len == k;
    }
  }
  return out;
}

ObstructionVerdict periodic_factor_obstruction(const Sft& sft) {
  require_nonempty(sft);
  const std::size_t nv = sft.vertices().size();
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, +1 forward / -1 backward)
  std::vector<char> touched(nv, 0);
  for (const auto& e : sft.pruned_edges()) {
    adj[e.from].emplace_back(e.to, 1);
    adj[e.to].emplace_back(e.from, -1);
    touched[e.from] = touched[e.to] = 1;
  }
  // Level function on each weakly connected component: l(to) = l(from) + 1
  // modulo the gcd of all defects, which is the largest admissible p.
  std::vector<long> level(nv, 0);
  std::vector<char> seen(nv, 0);
  ObstructionVerdict v;
  std::vector<std::pair<Word, std::size_t>> per_component;
  for (std::size_t s = 0; s < nv; ++s) {
    if (!touched[s] || seen[s]) continue;
    std::vector<int> members;
    std::queue<int> q;
    q.push(static_cast<int>(s));
    seen[s] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      members.push_back(x);
      for (auto [y, d] : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          level[y] = level[x] + d;
          q.push(y);
        }
    }
    std::size_t g = 0;
    Word first = sft.vertices()[members.front()];
    for (int x : members) {
      first = std::min(first, sft.vertices()[x]);
      for (auto [y, d] : adj[x])
        if (d == 1) g = std::gcd(g, static_cast<std::size_t>(std::labs(level[x] + 1 - level[y])));
    }
    per_component.emplace_back(first, g);
  }
  std::sort(per_component.begin(), per_component.end());
  std::size_t common = 0;
  bool all_trivial = true;
  for (auto& [w, g] : per_component) {
    v.component_levels.push_back(g);
    common = std::gcd(common, g);
    if (g != 1) all_trivial = false;
  }
  if (common > 1) {
    v.kind = ObstructionVerdict::Kind::Obstructed;
    v.period = common;
  } else if (all_trivial) {
    v.kind = ObstructionVerdict::Kind::Clear;
  } else {
    v.kind = ObstructionVerdict::Kind::Inconclusive;
  }
  return v;
}

}  // namespace glimca
