#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace gale {

/// FNV-1a 64-bit hash, used to derive RNG stream tags from label strings.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Seedable counter-based generator (SplitMix64 core).
///
/// Draw n from stream `label` under seed s:
///   state_0 = s XOR fnv1a64(label)
///   state_k = state_{k-1} + 0x9E3779B97F4A7C15
///   out_k   = mix(state_k)   with the SplitMix64 finalizer
/// so (seed, label, k) fully determines every draw; independent streams never
/// interact and corpora can be regenerated per element in any order.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::string_view stream_label)
      : state_(seed ^ fnv1a64(stream_label)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi) { return lo + next_unit() * (hi - lo); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  /// Standard normal via Box-Muller. Consumes exactly two uniforms per draw
  /// (the sine pair is discarded), u1 shifted into (0, 1] to keep log finite.
  double gaussian(double mean = 0.0, double sigma = 1.0) {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = next_unit();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + sigma * z;
  }

 private:
  std::uint64_t state_;
};

}  // namespace gale
