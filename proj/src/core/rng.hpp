#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gir {

// 64-bit FNV-1a; used for config hashes and child-seed derivation.
inline std::uint64_t fnv1a(std::string_view s,
                           std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

// Child seed derived from (master, tag, index). Growing the index range
// never perturbs earlier streams.
inline std::uint64_t child_seed(std::uint64_t master, std::string_view tag,
                                std::uint64_t index) {
  std::uint64_t h = fnv1a(tag);
  h = hash_combine(h, master);
  h = hash_combine(h, index);
  return h;
}

using Rng = std::mt19937_64;

}  // namespace gir
