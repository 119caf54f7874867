#include "isk/regime.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "isk/errors.hpp"
#include "isk/keyrow.hpp"

namespace isk {

namespace {

constexpr double kDelta2 = 1.0 / 32.0;
constexpr double kBucketCap = 4.0e18;

double log2_at_least_one(std::size_t n) {
  return std::max(1.0, std::log2(static_cast<double>(n)));
}

}  // namespace

Regime parse_regime(const std::string& text) {
  if (text == "faithful") return Regime::kFaithful;
  if (text == "practical") return Regime::kPractical;
  throw ConfigError("unknown regime '" + text + "' (expected faithful or practical)");
}

std::string regime_name(Regime regime) {
  return regime == Regime::kFaithful ? "faithful" : "practical";
}

std::size_t next_pow2(std::size_t v) noexcept { return v <= 1 ? 1 : std::bit_ceil(v); }

void SketchShape::validate() const {
  if (n == 0) throw ConfigError("sketch shape needs n >= 1");
  if (splits == 0 || matrix_reps == 0 || stable_reps == 0) {
    throw ConfigError("sketch shape needs positive split and repetition counts");
  }
  if (!(truncation > 0.0)) throw ConfigError("truncation must be positive");
}

std::size_t splits_for(Regime regime, std::size_t n) {
  if (regime == Regime::kFaithful) return default_splits(n);
  const auto scaled = static_cast<std::size_t>(std::ceil(4.0 * std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))));
  return std::max<std::size_t>(16, scaled);
}

std::size_t matrix_reps_for(Regime regime) {
  if (regime == Regime::kFaithful) return matrix_rep_floor(kDelta2, 64.0);
  return next_pow2(matrix_rep_floor(kDelta2, 8.0));
}

std::size_t stable_reps_for(Regime regime, double eps_prime, std::size_t n) {
  if (regime == Regime::kFaithful) {
    const double l = std::max(2.0, log2_at_least_one(n));
    return stable_rep_floor(eps_prime, 1.0 / (l * l), 16.0);
  }
  return next_pow2(stable_rep_floor(eps_prime, 0.1, 2.0));
}

std::uint64_t heavy_buckets_for(Regime regime, double alpha, double rho, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(rho >= 1.0)) throw ConfigError("rho must be >= 1");
  const double faithful = std::min(kBucketCap, std::ceil(4.0 * rho * log2_at_least_one(n) / (alpha * alpha)));
  if (regime == Regime::kFaithful) return static_cast<std::uint64_t>(faithful);
  const double practical = 64.0 * std::ceil(1.0 / alpha);
  return static_cast<std::uint64_t>(std::min(faithful, practical));
}

double level_alpha_for(Regime regime, double eps, std::size_t phi) {
  if (regime == Regime::kPractical) return 0.25;
  const double p = static_cast<double>(phi);
  return eps * eps / (p * p * p);
}

std::uint64_t f0_cap_for(Regime regime) {
  return regime == Regime::kFaithful ? 10'000'000'000ULL : 4096;
}

SketchShape shape_for(Regime regime, std::size_t n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  SketchShape s;
  s.n = n;
  s.splits = splits_for(regime, n);
  s.matrix_reps = matrix_reps_for(regime);
  s.stable_reps = stable_reps_for(regime, eps / 2.0, n);
  s.truncation = kDefaultTruncation;
  return s;
}

}  // namespace isk
