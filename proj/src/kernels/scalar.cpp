#include <cmath>

#include "cauchy_math.hpp"
#include "isk/kernels.hpp"

namespace isk::kernels {

namespace {

void fill_cauchy_scalar(const CauchyKey& key, double truncation, double* out, std::size_t count) {
  const double inv_strata = 1.0 / static_cast<double>(std::uint64_t{1} << key.bits);
  for (std::size_t t = 0; t < count; ++t) {
    const auto rep = static_cast<std::uint32_t>(t);
    out[t] = detail::cauchy_from_parts(detail::permute_stratum(rep, key),
                                       detail::lowbias32(rep * detail::kJitterStep + key.jitter),
                                       inv_strata, truncation);
  }
}

void add_scalar(double* acc, const double* v, std::size_t count) {
  for (std::size_t t = 0; t < count; ++t) acc[t] += v[t];
}

void add_product_scalar(double* acc, const double* a, const double* b, std::size_t count) {
  for (std::size_t t = 0; t < count; ++t) acc[t] += a[t] * b[t];
}

void bilinear_residual_scalar(const double* b1, const double* b2, const double* b3, double inv_m,
                              double inv_m2, double* out, std::size_t count) {
  for (std::size_t t = 0; t < count; ++t) {
    out[t] = std::fabs(b1[t] * inv_m - (b2[t] * b3[t]) * inv_m2);
  }
}

void aggregate_residual_scalar(const double* a1, const double* a2, double inv_m, double scale,
                               double* out, std::size_t count) {
  for (std::size_t t = 0; t < count; ++t) out[t] = std::fabs(a1[t] * inv_m - scale * a2[t]);
}

double sum_abs_affine_scalar(const double* joint, double scale, const double* marginal,
                             std::size_t count) {
  double total = 0.0;
  for (std::size_t j = 0; j < count; ++j) total += std::fabs(joint[j] - scale * marginal[j]);
  return total;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{
      "scalar",
      &fill_cauchy_scalar,
      &add_scalar,
      &add_product_scalar,
      &bilinear_residual_scalar,
      &aggregate_residual_scalar,
      &sum_abs_affine_scalar,
  };
  return table;
}

}  // namespace isk::kernels
