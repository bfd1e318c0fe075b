#ifndef LEORTC_COMMON_RNG_H_
#define LEORTC_COMMON_RNG_H_

#include <cstdint>
#include <random>

namespace leortc {

// Random helpers with platform-independent output. The standard
// distributions are implementation-defined, so anything that feeds a
// reproducible artifact (traces, datasets, training) goes through these.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double NextDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double NextDouble(double lo, double hi) {
    return lo + (hi - lo) * NextDouble();
  }

  // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
  uint64_t NextIndex(uint64_t n) { return engine_() % n; }

  bool NextBernoulli(double p) { return NextDouble() < p; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 step; used to derive independent sub-seeds from a base seed
// so that e.g. per-call streams never overlap.
inline uint64_t DeriveSeed(uint64_t base, uint64_t tag) {
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t DeriveSeed(uint64_t base, uint64_t tag_a, uint64_t tag_b) {
  return DeriveSeed(DeriveSeed(base, tag_a), tag_b);
}

}  // namespace leortc

#endif  // LEORTC_COMMON_RNG_H_
