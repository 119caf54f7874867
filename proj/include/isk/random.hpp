#pragma once

#include <cstdint>
#include <limits>

namespace isk {

/// SplitMix64 finalizer. Every seed in the project is derived through this.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for (stream, index) under a master seed. Distinct streams never
/// share children, so independent components can be seeded from one master.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index = 0) noexcept {
  return splitmix64(splitmix64(master ^ splitmix64(stream + 0x51ED270B27D1A1B5ULL)) + index);
}

/// Stream identifiers used with derive_seed.
enum class SeedStream : std::uint64_t {
  kSplitHash = 1,
  kBucketHash = 2,
  kLevelHash = 3,
  kRowCoefficients = 4,
  kColumnCoefficients = 5,
  kStableCoefficients = 6,
  kGenerator = 7,
  kSimulation = 8,
  kTrial = 9,
  kLevel = 10,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                    std::uint64_t index = 0) noexcept {
  return derive_seed(master, static_cast<std::uint64_t>(stream), index);
}

/// Splittable 64-bit generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound > 0 (multiply-shift reduction).
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  /// A child generator whose sequence is independent of this one's.
  constexpr SplitMix64 split() noexcept { return SplitMix64((*this)() ^ 0x6A09E667F3BCC909ULL); }

 private:
  std::uint64_t state_;
};

}  // namespace isk
