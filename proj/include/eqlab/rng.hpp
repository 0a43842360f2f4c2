// Deterministic random streams with hand-rolled samplers.
//
// std::uniform_int_distribution and friends are implementation-defined, so all
// sampling goes through uniform01() below to keep transcripts bit-identical
// across standard libraries. mt19937_64 itself is fully specified.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace eqlab {

// splitmix64 finalizer; the standard mixing constants.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for episode `index` under `master`. Documented contract: identical
// (master, index) pairs always map to the same stream, and consecutive indices
// give decorrelated seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0,1) from the top 53 bits of one engine draw.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform index in [0, n); consumes exactly one draw.
  int uniform_int(int n) {
    int v = static_cast<int>(uniform01() * n);
    return v >= n ? n - 1 : v;
  }

  // Index into `probs` by cumulative scan; consumes exactly one draw.
  // Assumes the masses sum to ~1; rounding shortfall falls on the last entry.
  int sample_discrete(const std::vector<double>& probs) {
    double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

  // Same scan over (value, mass) pairs.
  int sample_support(const std::vector<std::pair<int, double>>& support) {
    double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < support.size(); ++i) {
      acc += support[i].second;
      if (u < acc) return support[i].first;
    }
    return support.back().first;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eqlab
