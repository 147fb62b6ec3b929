#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace synir {

// 64-bit FNV-1a over a string, used to key per-unit RNG substreams.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// SplitMix64. This is the one generator behind every seeded operation
// (error injection, synthetic collections), so outputs are reproducible
// across platforms and standard-library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, n). Rejection keeps it unbiased.
  std::uint64_t bounded(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

// Independent substream for a named unit: state = mix(seed ^ fnv1a(tag)).
// Documents can then be processed in any order with identical results.
inline SplitMix64 substream(std::uint64_t seed, std::string_view tag) {
  SplitMix64 mixer(seed ^ fnv1a64(tag));
  return SplitMix64(mixer.next());
}

// First k positions of a Fisher-Yates shuffle of 0..n-1, in draw order.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                               SplitMix64& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace synir
