#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops. Each kernel has a scalar reference and, where the
// build and CPU allow it, an AVX2 variant; the variant is picked once at
// runtime. Element-wise kernels are bit-identical across variants (the
// library is built with -ffp-contract=off); reductions agree to rounding.

namespace isk::kernels {

/// Per-index key for stratified Cauchy generation. For index j and
/// repetition t the stratum is perm_j(t) in [0, 2^bits) and the variate is
/// tan(pi * (u - 1/2)) with u drawn uniformly inside that stratum. Across the
/// repetitions of one index the strata are a permutation, so the empirical
/// quantiles of those variates are pinned; across indices the keys are
/// independent, so each repetition sees independent standard Cauchy values.
struct CauchyKey {
  std::uint32_t perm[4];
  std::uint32_t jitter;
  std::uint32_t bits;
};

/// Key for (source seed, index) with `reps` repetitions (strata = next power
/// of two >= reps, capped at 2^20).
CauchyKey make_cauchy_key(std::uint64_t source_seed, std::uint64_t index, std::size_t reps) noexcept;

/// Number of stratum bits used for `reps` repetitions.
std::uint32_t stratum_bits(std::size_t reps) noexcept;

struct KernelTable {
  std::string_view name;
  /// out[t] = clamp(cauchy(key, t), -truncation, truncation), t in [0, count).
  void (*fill_cauchy)(const CauchyKey& key, double truncation, double* out, std::size_t count);
  /// acc[t] += v[t].
  void (*add)(double* acc, const double* v, std::size_t count);
  /// acc[t] += a[t] * b[t].
  void (*add_product)(double* acc, const double* a, const double* b, std::size_t count);
  /// out[t] = |b1[t] * inv_m - (b2[t] * b3[t]) * inv_m2|.
  void (*bilinear_residual)(const double* b1, const double* b2, const double* b3, double inv_m,
                            double inv_m2, double* out, std::size_t count);
  /// out[t] = |a1[t] * inv_m - scale * a2[t]|.
  void (*aggregate_residual)(const double* a1, const double* a2, double inv_m, double scale,
                             double* out, std::size_t count);
  /// sum_j |joint[j] - scale * marginal[j]|.
  double (*sum_abs_affine)(const double* joint, double scale, const double* marginal,
                           std::size_t count);
};

enum class Isa { kScalar, kAvx2 };

const KernelTable& scalar();
/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2.
const KernelTable* avx2();

/// The table used by the library. AVX2 when available unless the environment
/// variable IMPLICIT_SKETCH_ISA=scalar forces the reference path.
const KernelTable& active();
Isa active_isa();
std::string_view isa_name(Isa isa);

}  // namespace isk::kernels
