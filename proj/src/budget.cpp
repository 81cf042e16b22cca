#include "glimca/budget.hpp"

#include <cstdlib>
#include <string>

namespace glimca {

std::uint64_t enumeration_budget() {
  static const std::uint64_t value = [] {
    constexpr std::uint64_t kDefault = std::uint64_t{1} << 26;
    const char* env = std::getenv("GLIMCA_BUDGET");
    if (env == nullptr || *env == '\0') return kDefault;
    try {
      std::uint64_t v = std::stoull(env);
      return v == 0 ? kDefault : v;
    } catch (...) {
      return kDefault;
    }
  }();
  return value;
}

}  // namespace glimca
