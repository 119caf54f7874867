// Compiled with -mavx2 (no FMA); only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "cauchy_math.hpp"
#include "isk/kernels.hpp"

namespace isk::kernels {

namespace {

inline __m256i lowbias32_x8(__m256i x) {
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
  x = _mm256_mullo_epi32(x, _mm256_set1_epi32(0x7FEB352D));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 15));
  x = _mm256_mullo_epi32(x, _mm256_set1_epi32(static_cast<int>(0x846CA68BU)));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
  return x;
}

inline __m256d u32_to_pd(__m128i v) {
  const __m128i flipped = _mm_xor_si128(v, _mm_set1_epi32(static_cast<int>(0x80000000U)));
  return _mm256_add_pd(_mm256_cvtepi32_pd(flipped), _mm256_set1_pd(2147483648.0));
}

inline __m256d cauchy_x4(__m256d stratum, __m256d jitter, __m256d inv_strata, __m256d trunc) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d frac =
      _mm256_mul_pd(_mm256_add_pd(jitter, half), _mm256_set1_pd(0x1.0p-32));
  const __m256d u = _mm256_mul_pd(_mm256_add_pd(stratum, frac), inv_strata);
  const __m256d d = _mm256_sub_pd(u, half);
  const __m256d ad = _mm256_andnot_pd(sign_mask, d);
  const __m256d v = _mm256_sub_pd(half, ad);
  const __m256d w = _mm256_min_pd(ad, v);
  const __m256d use_cot = _mm256_cmp_pd(v, ad, _CMP_LT_OQ);
  const __m256d z = _mm256_mul_pd(w, _mm256_set1_pd(detail::kPi));
  const __m256d zz = _mm256_mul_pd(z, z);

  __m256d p = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(detail::kTanP0), zz),
                            _mm256_set1_pd(detail::kTanP1));
  p = _mm256_add_pd(_mm256_mul_pd(p, zz), _mm256_set1_pd(detail::kTanP2));
  p = _mm256_mul_pd(p, zz);

  __m256d q = _mm256_add_pd(zz, _mm256_set1_pd(detail::kTanQ0));
  q = _mm256_add_pd(_mm256_mul_pd(q, zz), _mm256_set1_pd(detail::kTanQ1));
  q = _mm256_add_pd(_mm256_mul_pd(q, zz), _mm256_set1_pd(detail::kTanQ2));
  q = _mm256_add_pd(_mm256_mul_pd(q, zz), _mm256_set1_pd(detail::kTanQ3));

  const __m256d numer = _mm256_mul_pd(z, _mm256_add_pd(q, p));
  const __m256d top = _mm256_blendv_pd(numer, q, use_cot);
  const __m256d bottom = _mm256_blendv_pd(q, numer, use_cot);
  __m256d t = _mm256_div_pd(top, bottom);
  t = _mm256_or_pd(t, _mm256_and_pd(d, sign_mask));
  const __m256d neg_trunc = _mm256_xor_pd(trunc, sign_mask);
  return _mm256_min_pd(_mm256_max_pd(t, neg_trunc), trunc);
}

void fill_cauchy_avx2(const CauchyKey& key, double truncation, double* out, std::size_t count) {
  const double inv = 1.0 / static_cast<double>(std::uint64_t{1} << key.bits);
  const __m256d inv_strata = _mm256_set1_pd(inv);
  const __m256d trunc = _mm256_set1_pd(truncation);
  const std::uint32_t mask_value = (key.bits >= 32) ? ~0U : ((1U << key.bits) - 1U);
  const __m256i mask = _mm256_set1_epi32(static_cast<int>(mask_value));
  const __m128i shift = _mm_cvtsi32_si128(static_cast<int>((key.bits + 1) / 2));
  const __m256i k0 = _mm256_set1_epi32(static_cast<int>(key.perm[0]));
  const __m256i k1 = _mm256_set1_epi32(static_cast<int>(key.perm[1] | 1U));
  const __m256i k2 = _mm256_set1_epi32(static_cast<int>(key.perm[2] | 1U));
  const __m256i k3 = _mm256_set1_epi32(static_cast<int>(key.perm[3]));
  const __m256i jitter_key = _mm256_set1_epi32(static_cast<int>(key.jitter));
  const __m256i step = _mm256_set1_epi32(static_cast<int>(detail::kJitterStep));
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  std::size_t t = 0;
  for (; t + 8 <= count; t += 8) {
    const __m256i rep = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(t)), lane);
    __m256i s = _mm256_setzero_si256();
    if (key.bits != 0) {
      s = _mm256_and_si256(_mm256_xor_si256(rep, k0), mask);
      s = _mm256_and_si256(_mm256_mullo_epi32(s, k1), mask);
      s = _mm256_xor_si256(s, _mm256_srl_epi32(s, shift));
      s = _mm256_and_si256(_mm256_mullo_epi32(s, k2), mask);
      s = _mm256_xor_si256(s, _mm256_srl_epi32(s, shift));
      s = _mm256_and_si256(_mm256_add_epi32(s, k3), mask);
    }
    const __m256i h = lowbias32_x8(_mm256_add_epi32(_mm256_mullo_epi32(rep, step), jitter_key));

    const __m256d s_lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(s));
    const __m256d s_hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(s, 1));
    const __m256d h_lo = u32_to_pd(_mm256_castsi256_si128(h));
    const __m256d h_hi = u32_to_pd(_mm256_extracti128_si256(h, 1));
    _mm256_storeu_pd(out + t, cauchy_x4(s_lo, h_lo, inv_strata, trunc));
    _mm256_storeu_pd(out + t + 4, cauchy_x4(s_hi, h_hi, inv_strata, trunc));
  }
  for (; t < count; ++t) {
    const auto rep = static_cast<std::uint32_t>(t);
    out[t] = detail::cauchy_from_parts(detail::permute_stratum(rep, key),
                                       detail::lowbias32(rep * detail::kJitterStep + key.jitter),
                                       inv, truncation);
  }
}

void add_avx2(double* acc, const double* v, std::size_t count) {
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    _mm256_storeu_pd(acc + t, _mm256_add_pd(_mm256_loadu_pd(acc + t), _mm256_loadu_pd(v + t)));
  }
  for (; t < count; ++t) acc[t] += v[t];
}

void add_product_avx2(double* acc, const double* a, const double* b, std::size_t count) {
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + t), _mm256_loadu_pd(b + t));
    _mm256_storeu_pd(acc + t, _mm256_add_pd(_mm256_loadu_pd(acc + t), prod));
  }
  for (; t < count; ++t) acc[t] += a[t] * b[t];
}

void bilinear_residual_avx2(const double* b1, const double* b2, const double* b3, double inv_m,
                            double inv_m2, double* out, std::size_t count) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d vm = _mm256_set1_pd(inv_m);
  const __m256d vm2 = _mm256_set1_pd(inv_m2);
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    const __m256d lhs = _mm256_mul_pd(_mm256_loadu_pd(b1 + t), vm);
    const __m256d rhs =
        _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(b2 + t), _mm256_loadu_pd(b3 + t)), vm2);
    _mm256_storeu_pd(out + t, _mm256_andnot_pd(sign_mask, _mm256_sub_pd(lhs, rhs)));
  }
  for (; t < count; ++t) out[t] = std::fabs(b1[t] * inv_m - (b2[t] * b3[t]) * inv_m2);
}

void aggregate_residual_avx2(const double* a1, const double* a2, double inv_m, double scale,
                             double* out, std::size_t count) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d vm = _mm256_set1_pd(inv_m);
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    const __m256d lhs = _mm256_mul_pd(_mm256_loadu_pd(a1 + t), vm);
    const __m256d rhs = _mm256_mul_pd(vs, _mm256_loadu_pd(a2 + t));
    _mm256_storeu_pd(out + t, _mm256_andnot_pd(sign_mask, _mm256_sub_pd(lhs, rhs)));
  }
  for (; t < count; ++t) out[t] = std::fabs(a1[t] * inv_m - scale * a2[t]);
}

double sum_abs_affine_avx2(const double* joint, double scale, const double* marginal,
                           std::size_t count) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d vs = _mm256_set1_pd(scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d diff =
        _mm256_sub_pd(_mm256_loadu_pd(joint + j), _mm256_mul_pd(vs, _mm256_loadu_pd(marginal + j)));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, diff));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; j < count; ++j) total += std::fabs(joint[j] - scale * marginal[j]);
  return total;
}

}  // namespace

namespace detail {

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2",
      &fill_cauchy_avx2,
      &add_avx2,
      &add_product_avx2,
      &bilinear_residual_avx2,
      &aggregate_residual_avx2,
      &sum_abs_affine_avx2,
  };
  return table;
}

}  // namespace detail

}  // namespace isk::kernels
