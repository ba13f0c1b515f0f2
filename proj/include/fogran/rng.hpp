#pragma once
// Deterministic RNG: splitmix64 generator, labelled substream derivation and
// unbiased bounded sampling. Pure integer arithmetic, so every draw is
// identical across platforms, runs, and degrees of parallelism.

#include <cstdint>

namespace fogran {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the (a, b)-labelled substream of a master seed. Streams for
/// distinct labels are statistically independent, so callers may consume
/// them in any order.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ mix64(a ^ 0xa0761d6478bd642fULL));
  h = mix64(h ^ mix64(b ^ 0xe7037ed1a0b428dbULL));
  return h;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n). Lemire multiply-shift with rejection; exact.
  std::uint64_t bounded(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace fogran
