#include "glimca/alphabet.hpp"

#include <cctype>
#include <limits>

#include "glimca/error.hpp"

namespace glimca {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ParseError("alphabet must be nonempty");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty()) throw ParseError("empty symbol name");
    for (char c : n) {
      if (!std::isgraph(static_cast<unsigned char>(c)) || c == ',')
        throw ParseError("symbol name '" + n + "' is not printable or contains ','");
    }
    if (!index_.emplace(n, static_cast<Symbol>(i)).second)
      throw ParseError("duplicate symbol name '" + n + "'");
    max_len_ = std::max(max_len_, n.size());
    if (n.size() != 1) single_char_ = false;
  }
}

bool Alphabet::contains(std::string_view name) const {
  return index_.count(std::string(name)) != 0;
}

Symbol Alphabet::index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw ParseError("unknown symbol '" + std::string(name) + "'");
  return it->second;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && text[end] != ',' &&
           !std::isspace(static_cast<unsigned char>(text[end])))
      ++end;
    std::string_view token = text.substr(i, end - i);
    std::size_t pos = 0;
    while (pos < token.size()) {
      std::size_t len = std::min(max_len_, token.size() - pos);
      bool matched = false;
      for (; len > 0; --len) {
        auto it = index_.find(std::string(token.substr(pos, len)));
        if (it != index_.end()) {
          out.push_back(it->second);
          pos += len;
          matched = true;
          break;
        }
      }
      if (!matched)
        throw ParseError("cannot tokenize '" + std::string(token.substr(pos)) + "' over alphabet");
    }
    i = end;
  }
  return out;
}

std::string Alphabet::format_word(const Word& w, std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) out += sep;
    out += name(w[i]);
  }
  return out;
}

std::string Alphabet::show(const Word& w) const {
  return format_word(w, single_char_ ? "" : ",");
}

std::uint64_t word_code(const Word& w, std::size_t base) {
  std::uint64_t code = 0;
  for (Symbol s : w) code = code * base + s;
  return code;
}

Word word_from_code(std::uint64_t code, std::size_t length, std::size_t base) {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(code % base);
    code /= base;
  }
  return w;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

}  // namespace glimca
