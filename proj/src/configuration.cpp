#include "glimca/configuration.hpp"

#include <algorithm>

#include "glimca/error.hpp"

namespace glimca {

Configuration Configuration::cyclic(Word word) {
  if (word.empty()) throw PreconditionError("cyclic configuration needs period >= 1");
  Configuration c;
  c.cyclic_ = true;
  c.center_ = std::move(word);
  return c;
}

Configuration Configuration::two_sided(Word left, Word center, std::int64_t offset, Word right) {
  if (left.empty() || right.empty())
    throw PreconditionError("background words must be nonempty");
  Configuration c;
  c.cyclic_ = false;
  c.left_ = std::move(left);
  c.center_ = std::move(center);
  c.right_ = std::move(right);
  c.offset_ = offset;
  return c;
}

Symbol Configuration::at(std::int64_t i) const {
  if (cyclic_) return center_[floor_mod(i, static_cast<std::int64_t>(center_.size()))];
  if (i < offset_) return left_[floor_mod(i - offset_, static_cast<std::int64_t>(left_.size()))];
  const std::int64_t end = center_end();
  if (i >= end) return right_[floor_mod(i - end, static_cast<std::int64_t>(right_.size()))];
  return center_[i - offset_];
}

Word Configuration::window(std::int64_t a, std::int64_t b) const {
  Word out;
  if (b < a) return out;
  out.reserve(b - a + 1);
  for (std::int64_t i = a; i <= b; ++i) out.push_back(at(i));
  return out;
}

Configuration Configuration::rotated(std::int64_t k) const {
  if (cyclic_) {
    const auto p = static_cast<std::int64_t>(center_.size());
    Word w(center_.size());
    for (std::int64_t i = 0; i < p; ++i) w[i] = center_[floor_mod(i + k, p)];
    return cyclic(std::move(w));
  }
  Configuration c = *this;
  c.offset_ -= k;
  return c;
}

Configuration Configuration::normalized() const {
  if (cyclic_) return *this;
  Configuration c = *this;
  std::size_t front = 0;
  const std::size_t pl = c.left_.size();
  while (front < c.center_.size() && c.center_[front] == c.left_[front % pl]) ++front;
  if (front > 0) {
    Word l(pl);
    for (std::size_t j = 0; j < pl; ++j) l[j] = c.left_[(j + front) % pl];
    c.left_ = std::move(l);
    c.center_.erase(c.center_.begin(), c.center_.begin() + static_cast<std::ptrdiff_t>(front));
    c.offset_ += static_cast<std::int64_t>(front);
  }
  const std::size_t pr = c.right_.size();
  std::size_t back = 0;
  while (back < c.center_.size() &&
         c.center_[c.center_.size() - 1 - back] == c.right_[(pr - 1 - back % pr) % pr])
    ++back;
  if (back > 0) {
    Word r(pr);
    for (std::size_t j = 0; j < pr; ++j) r[j] = c.right_[(j + pr - back % pr) % pr];
    c.right_ = std::move(r);
    c.center_.resize(c.center_.size() - back);
  }
  return c;
}

}  // namespace glimca
