#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "glimca/configuration.hpp"
#include "glimca/rule.hpp"
#include "glimca/sft.hpp"
#include "glimca/tm.hpp"

namespace glimca {

// Line-oriented text formats. Blank lines and lines starting with "//" are
// ignored; errors are ParseError with the 1-based line number.
//
// ".ca":  alphabet: <names...>
//         radius: <r>
//         then one of
//           builtin: identity|min|shift|swap
//           <n_-r> ... <n_r> -> <out>   (one per neighborhood; optional "default -> <out>")
//           program: signal-ca, followed by "tm: <line>" lines of a ".tm" file
// ".tm":  states:, initial:, final1:, final2:, gamma:, gammaA:, then
//         "q a g -> q' g' L|R|S". '*' as a or g matches anything not listed
//         explicitly; '*' as g' writes back the symbol read. "_" is the blank.
// ".sft": alphabet: <names...>, then "forbid: <words...>" or
//         "window: <n>" and "allow: <words...>".

LocalRule parse_rule(std::string_view text);
std::string format_rule(const LocalRule& rule);

TuringMachine parse_machine(std::string_view text);
std::string format_machine(const TuringMachine& machine);

Sft parse_sft(std::string_view text);

/// "cyclic:WORD" or "L^inf (CENTER@k) R^inf"; k is the coordinate of the
/// first center cell and defaults to 0.
Configuration parse_configuration(std::string_view text, const Alphabet& alphabet);
std::string format_configuration(const Configuration& x, const Alphabet& alphabet);

std::string read_file(const std::string& path);  ///< ParseError if unreadable

}  // namespace glimca
