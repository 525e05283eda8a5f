#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace whs {

/// Deterministic seeded generator. All distributions are built from the raw
/// 64-bit stream, so identical seed + identical call sequence gives identical
/// output on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform index in [0, n). n must be > 0.
  std::size_t pick(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  }

  bool coin() { return (next_u64() & 1u) != 0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

/// Derives an independent stream seed from a base seed (splitmix64 step).
/// Used to keep topology generation, annealing and prediction on disjoint
/// streams of the same experiment seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace whs
