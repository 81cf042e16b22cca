#pragma once

#include <cstdint>

namespace glimca {

/// Global cap on any exact enumeration (completions, automaton states,
/// spacetime cells). Overridden by the GLIMCA_BUDGET environment variable.
std::uint64_t enumeration_budget();

/// Maximum number of entries in a dense rule table.
inline constexpr std::uint64_t kDenseTableCap = std::uint64_t{1} << 24;

}  // namespace glimca
