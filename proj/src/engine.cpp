#include "glimca/engine.hpp"

#include "glimca/budget.hpp"
#include "glimca/error.hpp"

namespace glimca {

void check_alphabet(const LocalRule& rule, const Alphabet& alphabet) {
  if (!(rule.alphabet() == alphabet)) throw PreconditionError("alphabet mismatch between rule and input");
}

namespace {

void check_symbols(const LocalRule& rule, const Word& w) {
  for (Symbol s : w)
    if (s >= rule.alphabet().size()) throw PreconditionError("alphabet mismatch: symbol out of range");
}

}  // namespace

Word apply_cyclic(const LocalRule& rule, const Word& word) {
  const auto p = static_cast<std::int64_t>(word.size());
  const int r = rule.radius();
  Word nb(rule.width());
  Word out(word.size());
  for (std::int64_t i = 0; i < p; ++i) {
    for (int d = -r; d <= r; ++d) nb[d + r] = word[floor_mod(i + d, p)];
    out[i] = rule.apply(nb);
  }
  return out;
}

Word apply_block(const LocalRule& rule, const Word& word) {
  const std::size_t w = rule.width();
  if (word.size() < w) return {};
  Word out(word.size() - w + 1);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = rule.apply(std::span<const Symbol>(word.data() + i, w));
  return out;
}

Configuration apply_step(const LocalRule& rule, const Configuration& config) {
  const int r = rule.radius();
  if (config.is_cyclic()) {
    check_symbols(rule, config.word());
    return Configuration::cyclic(apply_cyclic(rule, config.word()));
  }
  check_symbols(rule, config.left());
  check_symbols(rule, config.center());
  check_symbols(rule, config.right());

  const std::int64_t a = config.offset() - r;
  const std::int64_t b = config.center_end() + r;  // exclusive
  Word center = apply_block(rule, config.window(a - r, b - 1 + r));

  const Word fl = apply_cyclic(rule, config.left());
  const Word fr = apply_cyclic(rule, config.right());
  const auto pl = static_cast<std::int64_t>(fl.size());
  const auto pr = static_cast<std::int64_t>(fr.size());
  Word left(fl.size()), right(fr.size());
  for (std::int64_t k = 0; k < pl; ++k) left[k] = fl[floor_mod(k - r, pl)];
  for (std::int64_t k = 0; k < pr; ++k) right[k] = fr[floor_mod(k + r, pr)];
  return Configuration::two_sided(std::move(left), std::move(center), a, std::move(right)).normalized();
}

SpacetimeDiagram run(const LocalRule& rule, const Configuration& config, int steps,
                     std::int64_t first, std::int64_t last) {
  if (steps < 0) throw PreconditionError("steps must be >= 0");
  if (first > last) throw PreconditionError("window must satisfy a <= b");
  const std::uint64_t width = static_cast<std::uint64_t>(last - first + 1);
  if (width * (static_cast<std::uint64_t>(steps) + 1) > enumeration_budget())
    throw BudgetError("spacetime window exceeds enumeration budget");
  SpacetimeDiagram d{rule.alphabet(), first, last, {}, {}};
  Configuration x = config;
  for (int t = 0; t <= steps; ++t) {
    d.rows.push_back(x.window(first, last));
    d.determined.emplace_back(width, 1);
    if (t < steps) x = apply_step(rule, x);
  }
  return d;
}

SpacetimeDiagram run(const LocalRule& rule, const Cylinder& cyl, int steps, std::int64_t first,
                     std::int64_t last) {
  if (steps < 0) throw PreconditionError("steps must be >= 0");
  if (first > last) throw PreconditionError("window must satisfy a <= b");
  check_symbols(rule, cyl.word);
  const std::uint64_t width = static_cast<std::uint64_t>(last - first + 1);
  if (width * (static_cast<std::uint64_t>(steps) + 1) > enumeration_budget())
    throw BudgetError("spacetime window exceeds enumeration budget");
  SpacetimeDiagram d{rule.alphabet(), first, last, {}, {}};
  const std::int64_t r = rule.radius();
  Word known = cyl.word;
  for (int t = 0; t <= steps; ++t) {
    const std::int64_t lo = cyl.position + r * t;  // first determined coordinate
    Word row(width, 0);
    std::vector<char> mask(width, 0);
    for (std::int64_t i = first; i <= last; ++i) {
      const std::int64_t j = i - lo;
      if (j >= 0 && j < static_cast<std::int64_t>(known.size())) {
        row[i - first] = known[j];
        mask[i - first] = 1;
      }
    }
    d.rows.push_back(std::move(row));
    d.determined.push_back(std::move(mask));
    if (t < steps) known = apply_block(rule, known);
  }
  return d;
}

Word determined_image(const LocalRule& rule, const Word& word, int steps) {
  if (steps < 0) throw PreconditionError("steps must be >= 0");
  check_symbols(rule, word);
  const std::uint64_t cone = 2ull * rule.radius() * static_cast<std::uint64_t>(steps);
  if (steps > 0 && word.size() <= cone)
    throw PreconditionError("word of length " + std::to_string(word.size()) +
                            " is too short for horizon t=" + std::to_string(steps) +
                            " (needs > 2rt = " + std::to_string(cone) + ")");
  Word w = word;
  for (int t = 0; t < steps; ++t) w = apply_block(rule, w);
  return w;
}

}  // namespace glimca
