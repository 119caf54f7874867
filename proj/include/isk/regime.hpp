#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "isk/sketches.hpp"

namespace isk {

/// Constant sets. kFaithful follows the stated formulas (feasible only for
/// tiny n); kPractical shrinks repetitions and bucket counts to desk scale.
enum class Regime { kFaithful, kPractical };

Regime parse_regime(const std::string& text);
std::string regime_name(Regime regime);

/// Smallest power of two >= v (v >= 1).
std::size_t next_pow2(std::size_t v) noexcept;

/// Sketch sizes shared by every key-row search over one stream.
struct SketchShape {
  std::size_t n = 1;
  std::size_t splits = 16;
  std::size_t matrix_reps = 32;
  std::size_t stable_reps = 256;
  double truncation = kDefaultTruncation;

  /// ConfigError on zero sizes.
  void validate() const;
};

/// Splits N: the key-row default, halved in the practical regime (min 16).
std::size_t splits_for(Regime regime, std::size_t n);
/// k' for delta2 = 1/32: faithful c2 = 64; practical c2 = 8 rounded up to a power of two.
std::size_t matrix_reps_for(Regime regime);
/// k for eps': faithful c1 = 16 with delta1 = 1/log2(n)^2; practical c1 = 2,
/// delta1 = 0.1, rounded up to a power of two.
std::size_t stable_reps_for(Regime regime, double eps_prime, std::size_t n);
/// tau = ceil(4 rho log2(n) / alpha^2); practical caps it at 64 ceil(1/alpha).
std::uint64_t heavy_buckets_for(Regime regime, double alpha, double rho, std::size_t n);
/// Per-level alpha in the recursive sum: eps^2 / phi^3, or 0.25 in practical mode.
double level_alpha_for(Regime regime, double eps, std::size_t phi);
/// Surviving-row cap at the base level: 10^10 or 4096.
std::uint64_t f0_cap_for(Regime regime);
/// Shape for a key-row search at accuracy eps (BA1 runs at eps / 2).
SketchShape shape_for(Regime regime, std::size_t n, double eps);

}  // namespace isk
