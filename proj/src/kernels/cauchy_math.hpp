#pragma once

// Shared constants and the scalar per-element Cauchy transform. The AVX2
// variant performs the same operations in the same order.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "isk/kernels.hpp"

namespace isk::kernels::detail {

inline constexpr double kPi = 3.14159265358979323846;

// Rational approximation of tan on [0, pi/4]: tan(z) = z + z * zz * P(zz) / Q(zz).
inline constexpr double kTanP0 = -1.30936939181383777646e4;
inline constexpr double kTanP1 = 1.15351664838587416140e6;
inline constexpr double kTanP2 = -1.79565251976484877988e7;
inline constexpr double kTanQ0 = 1.36812963470692954678e4;
inline constexpr double kTanQ1 = -1.32089234440210967447e6;
inline constexpr double kTanQ2 = 2.50083801823357915839e7;
inline constexpr double kTanQ3 = -5.38695755929454629881e7;

inline constexpr std::uint32_t kJitterStep = 0x9E3779B9U;

constexpr std::uint32_t lowbias32(std::uint32_t x) noexcept {
  x ^= x >> 16;
  x *= 0x7FEB352DU;
  x ^= x >> 15;
  x *= 0x846CA68BU;
  x ^= x >> 16;
  return x;
}

constexpr std::uint32_t permute_stratum(std::uint32_t t, const CauchyKey& key) noexcept {
  if (key.bits == 0) return 0;
  const std::uint32_t mask = (key.bits >= 32) ? ~0U : ((1U << key.bits) - 1U);
  const std::uint32_t shift = (key.bits + 1) / 2;
  std::uint32_t x = (t ^ key.perm[0]) & mask;
  x = (x * (key.perm[1] | 1U)) & mask;
  x ^= x >> shift;
  x = (x * (key.perm[2] | 1U)) & mask;
  x ^= x >> shift;
  return (x + key.perm[3]) & mask;
}

inline double cauchy_from_parts(std::uint32_t stratum, std::uint32_t jitter, double inv_strata,
                                double truncation) noexcept {
  const double frac = (static_cast<double>(jitter) + 0.5) * 0x1.0p-32;
  const double u = (static_cast<double>(stratum) + frac) * inv_strata;
  const double d = u - 0.5;
  const double ad = std::fabs(d);
  const double v = 0.5 - ad;
  const double w = std::min(ad, v);
  const bool use_cot = v < ad;
  const double z = w * kPi;
  const double zz = z * z;
  const double p = ((kTanP0 * zz + kTanP1) * zz + kTanP2) * zz;
  const double q = (((zz + kTanQ0) * zz + kTanQ1) * zz + kTanQ2) * zz + kTanQ3;
  const double numer = z * (q + p);
  const double top = use_cot ? q : numer;
  const double bottom = use_cot ? numer : q;
  const double t = std::copysign(top / bottom, d);
  return std::min(std::max(t, -truncation), truncation);
}

inline double cauchy_at(const CauchyKey& key, std::uint32_t t, double truncation) noexcept {
  const double inv_strata = 1.0 / static_cast<double>(std::uint64_t{1} << key.bits);
  return cauchy_from_parts(permute_stratum(t, key), lowbias32(t * kJitterStep + key.jitter),
                           inv_strata, truncation);
}

}  // namespace isk::kernels::detail
