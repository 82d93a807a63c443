#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace sbmtest {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ mix64(value + 0x9e3779b97f4a7c15ULL));
}

std::uint64_t hash_string(std::string_view text);

// Derives a child seed from a parent seed and a sequence of tags.
template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t seed, Tags... tags) {
  std::uint64_t h = mix64(seed);
  ((h = hash_combine(h, static_cast<std::uint64_t>(tags))), ...);
  return h;
}

// Counter-based stream: the i-th output is mix64(key + i * golden).
// Streams with different keys are independent; split() derives a child key.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(mix64(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  Rng split(std::uint64_t tag) const { return Rng(hash_combine(key_, tag)); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1].
  double uniform_open_zero() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }
  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Standard normal (Box-Muller, one value per call).
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sbmtest
