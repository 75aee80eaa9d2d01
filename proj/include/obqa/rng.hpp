#pragma once

#include <cstdint>
#include <string_view>

namespace obqa {

// splitmix64: tiny, fast, and bit-stable everywhere. We avoid <random>
// distributions on purpose — their output is implementation-defined, and
// corrupted datasets must reproduce exactly across toolchains.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n) via rejection sampling; no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t zone = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next();
      if (x >= zone) return x % n;
    }
  }

 private:
  std::uint64_t state_;
};

// FNV-1a, 64-bit. Used to fold record ids into per-record RNG streams.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace obqa
