#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace cf::detail {

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_string(const std::string& s) {
  return std::hash<std::string>{}(s);
}

}  // namespace cf::detail
