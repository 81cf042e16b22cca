#include "glimca/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "glimca/budget.hpp"
#include "glimca/error.hpp"
#include "glimca/signal_ca.hpp"

namespace glimca {

namespace {

struct Line {
  int number;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string t = trim(raw);
    if (t.empty() || t.rfind("//", 0) == 0) continue;
    out.push_back({n, std::move(t)});
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// "key: value" -> (key, value); nullopt when the line has no such prefix.
std::optional<std::pair<std::string, std::string>> key_value(const std::string& line) {
  static const std::regex re(R"(^([A-Za-z0-9]+):\s*(.*)$)");
  std::smatch m;
  if (!std::regex_match(line, m, re)) return std::nullopt;
  return std::make_pair(m[1].str(), trim(m[2].str()));
}

int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError("expected an integer for " + what + ", got '" + s + "'", line);
  }
}

Symbol symbol_at(const Alphabet& a, const std::string& name, int line) {
  if (!a.contains(name)) throw ParseError("unknown symbol '" + name + "'", line);
  return a.index(name);
}

Alphabet alphabet_at(const std::string& value, int line) {
  try {
    return Alphabet(split_ws(value));
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

std::vector<Word> words_at(const Alphabet& a, const std::string& value, int line) {
  std::vector<Word> out;
  for (const auto& tok : split_ws(value)) {
    try {
      out.push_back(a.parse_word(tok));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------

TuringMachine parse_machine(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> header;
  struct Rule {
    int line;
    std::vector<std::string> tok;  // q a g q' g' move
  };
  std::vector<Rule> rules;
  for (const auto& l : content_lines(text)) {
    if (auto kv = key_value(l.text)) {
      static const std::set<std::string> keys{"states", "initial", "final1", "final2", "gamma", "gammaA"};
      if (!keys.count(kv->first)) throw ParseError("unknown key '" + kv->first + "'", l.number);
      if (header.count(kv->first)) throw ParseError("duplicate key '" + kv->first + "'", l.number);
      header[kv->first] = {kv->second, l.number};
      continue;
    }
    auto tok = split_ws(l.text);
    if (tok.size() != 7 || tok[3] != "->") throw ParseError("expected 'q a g -> q2 g2 L|R|S'", l.number);
    tok.erase(tok.begin() + 3);
    rules.push_back({l.number, std::move(tok)});
  }
  for (const char* k : {"states", "initial", "final1", "final2", "gamma", "gammaA"})
    if (!header.count(k)) throw ParseError(std::string("missing '") + k + ":' line");

  const auto states = split_ws(header["states"].first);
  auto state_of = [&](const std::string& name, int line) {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<int>(i);
    throw ParseError("unknown state '" + name + "'", line);
  };
  const int q0 = state_of(header["initial"].first, header["initial"].second);
  const int f1 = state_of(header["final1"].first, header["final1"].second);
  const int f2 = state_of(header["final2"].first, header["final2"].second);
  const Alphabet gamma_a = alphabet_at(header["gammaA"].first, header["gammaA"].second);

  std::optional<TuringMachine> tm;
  try {
    tm.emplace(states, q0, f1, f2, split_ws(header["gamma"].first), gamma_a);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), header["states"].second);
  }

  auto tape_of = [&](const std::string& name, int line) {
    try {
      return tm->gamma_index(name);
    } catch (const PreconditionError&) {
      throw ParseError("unknown tape symbol '" + name + "'", line);
    }
  };
  auto move_of = [](const std::string& m, int line) {
    if (m == "L") return TuringMachine::Move::Left;
    if (m == "R") return TuringMachine::Move::Right;
    if (m == "S") return TuringMachine::Move::Stay;
    throw ParseError("move must be L, R or S", line);
  };

  // Explicit lines first, then wildcard lines fill what is left, in file order.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& r : rules) {
      const bool wild = r.tok[1] == "*" || r.tok[2] == "*";
      if (wild != (pass == 1)) continue;
      const int q = state_of(r.tok[0], r.line);
      if (tm->is_final(q)) throw ParseError("final state '" + r.tok[0] + "' cannot have transitions", r.line);
      std::vector<Symbol> ros;
      if (r.tok[1] == "*") {
        for (Symbol a = 0; a < gamma_a.size(); ++a) ros.push_back(a);
      } else {
        ros.push_back(symbol_at(gamma_a, r.tok[1], r.line));
      }
      std::vector<int> rws;
      if (r.tok[2] == "*") {
        for (int g = 0; g < static_cast<int>(tm->tape_symbols()); ++g) rws.push_back(g);
      } else {
        rws.push_back(tape_of(r.tok[2], r.line));
      }
      const int target = state_of(r.tok[3], r.line);
      const bool same = r.tok[4] == "*";
      const int write = same ? 0 : tape_of(r.tok[4], r.line);
      const auto move = move_of(r.tok[5], r.line);
      for (Symbol a : ros)
        for (int g : rws) {
          if (tm->action(q, a, g)) {
            if (!wild) throw ParseError("duplicate transition", r.line);
            continue;
          }
          tm->set(q, a, g, {target, same ? g : write, move});
        }
    }
  try {
    tm->validate();
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("machine is not total: ") + e.what());
  }
  return std::move(*tm);
}

std::string format_machine(const TuringMachine& m) {
  std::ostringstream os;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  std::vector<std::string> states;
  for (std::size_t q = 0; q < m.state_count(); ++q) states.push_back(m.state_name(static_cast<int>(q)));
  os << "states: " << join(states) << "\n"
     << "initial: " << m.state_name(m.initial()) << "\n"
     << "final1: " << m.state_name(m.final1()) << "\n"
     << "final2: " << m.state_name(m.final2()) << "\n"
     << "gamma: " << join(m.gamma()) << "\n"
     << "gammaA: " << join(m.gamma_a().names()) << "\n";
  for (int q = 0; q < static_cast<int>(m.state_count()); ++q) {
    if (m.is_final(q)) continue;
    for (Symbol a = 0; a < m.gamma_a().size(); ++a)
      for (int g = 0; g < static_cast<int>(m.tape_symbols()); ++g) {
        const auto& act = m.action(q, a, g);
        if (!act) continue;
        const char* mv = act->move == TuringMachine::Move::Left ? "L" : act->move == TuringMachine::Move::Right ? "R" : "S";
        os << m.state_name(q) << " " << m.gamma_a().name(a) << " " << m.tape_name(g) << " -> "
           << m.state_name(act->state) << " " << m.tape_name(act->write) << " " << mv << "\n";
      }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

LocalRule parse_rule(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::optional<int> radius;
  std::optional<std::string> builtin, program, name;
  std::optional<Symbol> fallback;
  std::string tm_text;
  std::vector<int> tm_lines;
  struct Entry {
    int line;
    std::vector<std::string> in;
    std::string out;
  };
  std::vector<Entry> entries;

  for (const auto& l : content_lines(text)) {
    if (l.text.rfind("tm:", 0) == 0) {
      tm_text += trim(std::string_view(l.text).substr(3)) + "\n";
      tm_lines.push_back(l.number);
      continue;
    }
    const auto arrow = l.text.find("->");
    if (arrow != std::string::npos) {
      auto lhs = split_ws(l.text.substr(0, arrow));
      auto rhs = split_ws(l.text.substr(arrow + 2));
      if (rhs.size() != 1) throw ParseError("expected a single output symbol", l.number);
      if (lhs.size() == 1 && lhs[0] == "default") {
        if (!alphabet) throw ParseError("'default' before 'alphabet:'", l.number);
        if (fallback) throw ParseError("duplicate default", l.number);
        fallback = symbol_at(*alphabet, rhs[0], l.number);
        continue;
      }
      entries.push_back({l.number, std::move(lhs), rhs[0]});
      continue;
    }
    auto kv = key_value(l.text);
    if (!kv) throw ParseError("unrecognized line '" + l.text + "'", l.number);
    const auto& [key, value] = *kv;
    if (key == "alphabet") {
      if (alphabet) throw ParseError("duplicate alphabet", l.number);
      alphabet = alphabet_at(value, l.number);
    } else if (key == "radius") {
      radius = parse_int(value, l.number, "radius");
      if (*radius < 0) throw ParseError("radius must be >= 0", l.number);
    } else if (key == "builtin") {
      builtin = value;
      if (value != "identity" && value != "min" && value != "shift" && value != "swap")
        throw ParseError("unknown builtin '" + value + "'", l.number);
    } else if (key == "program") {
      if (value != "signal-ca") throw ParseError("unknown program '" + value + "'", l.number);
      program = value;
    } else if (key == "name") {
      name = value;
    } else {
      throw ParseError("unknown key '" + key + "'", l.number);
    }
  }

  if (program) {
    if (alphabet || builtin || !entries.empty() || fallback)
      throw ParseError("a program rule takes only 'tm:' lines");
    if (tm_text.empty()) throw ParseError("program: signal-ca needs 'tm:' lines");
    try {
      auto machine = std::make_shared<const TuringMachine>(parse_machine(tm_text));
      return compile_signal_ca(std::move(machine));
    } catch (const ParseError& e) {
      const int inner = e.line();
      const int outer = inner > 0 && inner <= static_cast<int>(tm_lines.size()) ? tm_lines[inner - 1] : 0;
      std::string msg = e.what();
      if (inner > 0) msg = msg.substr(msg.find(": ") + 2);
      throw ParseError(msg, outer);
    }
  }
  if (!tm_text.empty()) throw ParseError("'tm:' lines need 'program: signal-ca'", tm_lines.front());
  if (!alphabet) throw ParseError("missing 'alphabet:' line");
  if (builtin) {
    if (!entries.empty() || fallback) throw ParseError("builtin rules take no table lines");
    if (radius && *radius != 1) throw ParseError("builtin rules have radius 1");
    return LocalRule::builtin(*builtin, *alphabet);
  }
  if (!radius) throw ParseError("missing 'radius:' line");
  const std::size_t width = static_cast<std::size_t>(2 * *radius + 1);
  const std::uint64_t size = saturating_pow(alphabet->size(), width);
  if (size > kDenseTableCap) throw BudgetError("rule table exceeds the dense-table cap");
  std::vector<std::optional<Symbol>> table(size);
  for (const auto& e : entries) {
    if (e.in.size() != width)
      throw ParseError("neighborhood needs " + std::to_string(width) + " symbols", e.line);
    std::uint64_t code = 0;
    for (const auto& s : e.in) code = code * alphabet->size() + symbol_at(*alphabet, s, e.line);
    if (table[code]) throw ParseError("duplicate neighborhood", e.line);
    table[code] = symbol_at(*alphabet, e.out, e.line);
  }
  std::vector<Symbol> dense(size);
  for (std::uint64_t c = 0; c < size; ++c) {
    if (!table[c] && !fallback)
      throw ParseError("rule table is not total: missing " +
                       alphabet->format_word(word_from_code(c, width, alphabet->size()), " "));
    dense[c] = table[c] ? *table[c] : *fallback;
  }
  return LocalRule::from_table(*alphabet, *radius, std::move(dense), name.value_or(""));
}

std::string format_rule(const LocalRule& rule) {
  std::ostringstream os;
  if (!rule.is_dense()) {
    const auto* sr = as_signal_rule(rule);
    if (!sr) throw PreconditionError("structured rule of kind '" + rule.program()->kind() + "' has no text form");
    os << "program: signal-ca\n";
    std::istringstream in(format_machine(sr->signal_alphabet().machine()));
    std::string line;
    while (std::getline(in, line)) os << "tm: " << line << "\n";
    return os.str();
  }
  const Alphabet& a = rule.alphabet();
  os << "alphabet: " << a.format_word([&] {
    Word all(a.size());
    for (Symbol s = 0; s < a.size(); ++s) all[s] = s;
    return all;
  }(), " ") << "\n";
  os << "radius: " << rule.radius() << "\n";
  if (!rule.name().empty()) os << "name: " << rule.name() << "\n";
  const std::size_t width = static_cast<std::size_t>(rule.width());
  for (std::uint64_t c = 0; c < rule.table().size(); ++c)
    os << a.format_word(word_from_code(c, width, a.size()), " ") << " -> " << a.name(rule.table()[c]) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

Sft parse_sft(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::optional<std::vector<Word>> forbid, allow;
  std::optional<int> window;
  int allow_line = 0;
  for (const auto& l : content_lines(text)) {
    auto kv = key_value(l.text);
    if (!kv) throw ParseError("unrecognized line '" + l.text + "'", l.number);
    const auto& [key, value] = *kv;
    if (key == "alphabet") {
      if (alphabet) throw ParseError("duplicate alphabet", l.number);
      alphabet = alphabet_at(value, l.number);
    } else if (key == "forbid" || key == "allow") {
      if (!alphabet) throw ParseError("'" + key + ":' before 'alphabet:'", l.number);
      auto& slot = key == "forbid" ? forbid : allow;
      if (!slot) slot.emplace();
      for (auto& w : words_at(*alphabet, value, l.number)) slot->push_back(std::move(w));
      if (key == "allow") allow_line = l.number;
    } else if (key == "window") {
      window = parse_int(value, l.number, "window");
      if (*window < 1) throw ParseError("window must be >= 1", l.number);
    } else {
      throw ParseError("unknown key '" + key + "'", l.number);
    }
  }
  if (!alphabet) throw ParseError("missing 'alphabet:' line");
  if (forbid && (allow || window)) throw ParseError("use either 'forbid:' or 'window:'/'allow:'");
  if (allow || window) {
    if (!window) throw ParseError("'allow:' needs 'window:'");
    for (const auto& w : allow.value_or(std::vector<Word>{}))
      if (w.size() != static_cast<std::size_t>(*window))
        throw ParseError("allowed word length differs from the window", allow_line);
    return Sft::from_allowed(*alphabet, static_cast<std::size_t>(*window), allow.value_or(std::vector<Word>{}));
  }
  for (const auto& w : forbid.value_or(std::vector<Word>{}))
    if (w.empty()) throw ParseError("empty forbidden word");
  return Sft::from_forbidden(*alphabet, forbid.value_or(std::vector<Word>{}));
}

// ---------------------------------------------------------------------------

Configuration parse_configuration(std::string_view text, const Alphabet& alphabet) {
  const std::string t = trim(text);
  auto word = [&](const std::string& s) {
    try {
      return alphabet.parse_word(s);
    } catch (const ParseError& e) {
      throw ParseError(std::string("configuration: ") + e.what());
    }
  };
  if (t.rfind("cyclic:", 0) == 0) {
    Word w = word(trim(std::string_view(t).substr(7)));
    if (w.empty()) throw ParseError("configuration: cyclic word must be nonempty");
    return Configuration::cyclic(std::move(w));
  }
  static const std::regex re(R"(^(\S+)\^inf\s*\(\s*([^@)]*?)\s*(?:@\s*(-?\d+))?\s*\)\s*(\S+)\^inf$)");
  std::smatch m;
  if (!std::regex_match(t, m, re))
    throw ParseError("configuration must be 'cyclic:WORD' or 'L^inf (CENTER@k) R^inf'");
  Word left = word(m[1].str()), right = word(m[4].str());
  if (left.empty() || right.empty()) throw ParseError("configuration: backgrounds must be nonempty");
  Word center = m[2].str().empty() ? Word{} : word(m[2].str());
  const std::int64_t offset = m[3].matched ? std::stoll(m[3].str()) : 0;
  return Configuration::two_sided(std::move(left), std::move(center), offset, std::move(right));
}

std::string format_configuration(const Configuration& x, const Alphabet& alphabet) {
  if (x.is_cyclic()) return "cyclic:" + alphabet.show(x.word());
  return alphabet.show(x.left()) + "^inf (" + alphabet.show(x.center()) + "@" + std::to_string(x.offset()) + ") " +
         alphabet.show(x.right()) + "^inf";
}

}  // namespace glimca
