// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace relay {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

// 64-bit FNV-1a over raw bytes. Used to derive RNG streams and to
// fingerprint configs. Not cryptographic.
constexpr std::uint64_t fnv1a(std::string_view bytes,
                              std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

constexpr std::uint64_t fnv1a_u64(std::uint64_t v,
                                  std::uint64_t h = kFnvOffset) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= kFnvPrime;
  }
  return h;
}

// SplitMix64. Deliberately not <random>: std engines are portable but the
// distributions are implementation-defined, and replayed chains must be
// byte-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // unbiased uniform in [0,n); modulo rejection
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Fisher-Yates; after the call the first k elements are a uniform
  // ordered sample without replacement
  template <typename T>
  void partial_shuffle(std::vector<T>& v, std::size_t k) {
    const std::size_t n = v.size();
    if (n == 0) return;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
      const std::size_t j = i + uniform_below(n - i);
      if (j != i) std::swap(v[i], v[j]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    partial_shuffle(v, v.size());
  }

 private:
  std::uint64_t state_;
};

// Independent stream per (seed, document, iteration, purpose). Keying the
// stream this way makes every document's chain reproducible in isolation,
// which is what allows resumed runs to replay byte-identically.
inline Rng stream_for(std::uint64_t seed, std::string_view doc_id,
                      std::uint64_t t, std::string_view purpose) {
  std::uint64_t h = fnv1a_u64(seed);
  h = fnv1a(doc_id, h);
  h = fnv1a("\x1f", h);
  h = fnv1a_u64(t, h);
  h = fnv1a("\x1f", h);
  h = fnv1a(purpose, h);
  return Rng(h);
}

}  // namespace relay
