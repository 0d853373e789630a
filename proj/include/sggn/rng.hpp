#ifndef SGGN_RNG_HPP
#define SGGN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>

namespace sggn {

// Counter-based PRNG: SplitMix64 (Vigna's public-domain finalizer).
//
// Draw i of the stream with seed s is mix64(s + (i+1) * GOLDEN), so any draw
// can be addressed directly via skip_to() and two generators with the same
// seed always produce the same byte sequence on every platform.
//
// Draw order conventions used across the library are documented at each call
// site; the primitives below are the full draw vocabulary:
//   next_u64  — one 64-bit draw
//   unit      — one draw, top 53 bits, value in [0, 1)
//   sign      — one draw, least significant bit, -1.0 or +1.0
//   below(n)  — one draw, Lemire multiply-shift reduction to [0, n)
//   gauss2    — two draws, Box-Muller pair
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Jumps so that the next draw is draw number `count` of the stream.
  void skip_to(std::uint64_t count) { state_ = seed_ + count * kGolden; }

  double unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  // Uniform in [0, n) without rejection: (x * n) >> 64.
  std::uint64_t below(std::uint64_t n) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    return static_cast<std::uint64_t>(wide >> 64);
  }

  // Box-Muller; the first uniform is nudged away from zero so log() is safe.
  void gauss2(double& z0, double& z1) {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    z0 = r * std::cos(theta);
    z1 = r * std::sin(theta);
  }

  double gauss() {
    double z0, z1;
    gauss2(z0, z1);
    return z0;  // one draw pair consumed; second value discarded
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

// FNV-1a, used solely to hash component names into sub-seed space.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001B3ULL;
  }
  return h;
}

// All randomness in the library flows from one master seed through this
// derivation: sub = mix(mix(master ^ fnv1a64(component)) + index * GOLDEN).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                                 std::uint64_t index = 0) {
  return SplitMix64::mix(SplitMix64::mix(master ^ fnv1a64(component)) +
                         index * SplitMix64::kGolden);
}

}  // namespace sggn

#endif  // SGGN_RNG_HPP
