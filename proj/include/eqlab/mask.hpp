// Bitset over hypothesis indices, used for version-space member sets.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace eqlab {

using Mask = std::vector<std::uint64_t>;

inline int mask_blocks(int m) { return (m + 63) / 64; }

inline Mask mask_none(int m) { return Mask(mask_blocks(m), 0); }

inline Mask mask_all(int m) {
  Mask out(mask_blocks(m), ~0ULL);
  int tail = m % 64;
  if (tail != 0) out.back() = (1ULL << tail) - 1;
  return out;
}

inline void mask_set(Mask& a, int i) { a[i / 64] |= 1ULL << (i % 64); }

inline bool mask_test(const Mask& a, int i) {
  return (a[i / 64] >> (i % 64)) & 1ULL;
}

inline Mask mask_and(const Mask& a, const Mask& b) {
  Mask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

inline bool mask_empty(const Mask& a) {
  for (std::uint64_t w : a)
    if (w != 0) return false;
  return true;
}

inline int mask_count(const Mask& a) {
  int c = 0;
  for (std::uint64_t w : a) c += std::popcount(w);
  return c;
}

inline std::vector<int> mask_members(const Mask& a) {
  std::vector<int> out;
  for (std::size_t b = 0; b < a.size(); ++b) {
    std::uint64_t w = a[b];
    while (w != 0) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<int>(b) * 64 + bit);
      w &= w - 1;
    }
  }
  return out;
}

inline Mask mask_from_members(const std::vector<int>& members, int m) {
  Mask out = mask_none(m);
  for (int h : members) mask_set(out, h);
  return out;
}

struct MaskHash {
  std::size_t operator()(const Mask& a) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t w : a) {
      h ^= w;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace eqlab
