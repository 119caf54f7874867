#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "isk/hashing.hpp"
#include "isk/stream.hpp"

namespace isk {

inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultTruncation = 1e6;

/// ceil(c1 / eps'^2 * ln(1/delta1)); ConfigError for parameters out of range.
std::size_t stable_rep_floor(double eps_prime, double delta1, double c1 = 16.0);
/// ceil(c2 * ln(1/delta2)).
std::size_t matrix_rep_floor(double delta2, double c2 = 64.0);
/// ConfigError when reps < floor.
void require_reps(std::size_t reps, std::size_t floor, const char* what);

/// Median of the values (mean of the middle pair for even counts). Reorders.
double median_inplace(std::span<double> values);

/// Stable L1 sketch of v = J I_mask A. Per repetition t:
///   A1 = sum mask(i) c_j,  A2 = sum c_j,  F_S = sum mask(i)
/// so A1/m - F_S A2/m^2 = sum_j c_j v_j. Coefficients c_j are standard Cauchy,
/// regenerated from (seed, j) on every use.
class StableL1VectorSketch {
 public:
  StableL1VectorSketch(std::size_t n, BitHash mask, std::size_t reps, std::uint64_t seed,
                       double truncation = kNoTruncation);

  void ingest(const StreamEvent& e);
  void ingest(std::span<const StreamEvent> events);

  /// median_t |A1/m - F_S A2/m^2|; std::domain_error before the first event.
  double estimate() const;
  /// Signed per-repetition values A1/m - F_S A2/m^2.
  std::vector<double> rep_values() const;
  /// c_j for every repetition.
  std::vector<double> coefficients(std::size_t j) const;

  /// ConfigError unless both sketches share n, reps, seed, truncation and mask.
  void merge(const StableL1VectorSketch& other);

  std::size_t n() const noexcept { return n_; }
  std::size_t reps() const noexcept { return a1_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  double truncation() const noexcept { return truncation_; }
  std::uint64_t m_seen() const noexcept { return m_seen_; }
  std::uint64_t masked_count() const noexcept { return f_s_; }
  const BitHash& mask() const noexcept { return mask_; }
  std::span<const double> a1() const noexcept { return a1_; }
  std::span<const double> a2() const noexcept { return a2_; }

  /// Bytes held by accumulators, counters and the mask descriptor.
  std::size_t space_bytes() const;

  void serialize(std::vector<std::uint8_t>& out) const;
  static StableL1VectorSketch deserialize(std::span<const std::uint8_t> in);

 private:
  std::size_t n_;
  BitHash mask_;
  std::uint64_t seed_;
  double truncation_;
  std::uint64_t m_seen_ = 0;
  std::uint64_t f_s_ = 0;
  std::vector<double> a1_;
  std::vector<double> a2_;
  std::vector<double> scratch_;
};

/// Double-Cauchy sketch of the row-masked implicit matrix. Per repetition t:
///   B1 = sum mask(i) x_i y_j,  B2 = sum mask(i) x_i,  B3 = sum y_j
/// so B1/m - B2 B3/m^2 = sum_{i,j} mask(i) x_i y_j a_ij. Row and column
/// coefficients are truncated Cauchy variates from separate seeds.
class IMMatrixSketch {
 public:
  IMMatrixSketch(std::size_t n, BitHash mask, std::size_t reps, std::uint64_t row_seed,
                 std::uint64_t column_seed, double truncation = kDefaultTruncation);
  /// Row and column seeds derived from one master seed.
  IMMatrixSketch(std::size_t n, BitHash mask, std::size_t reps, std::uint64_t seed,
                 double truncation = kDefaultTruncation);

  void ingest(const StreamEvent& e);
  void ingest(std::span<const StreamEvent> events);

  /// median_t |B1/m - B2 B3/m^2|; std::domain_error before the first event.
  double estimate() const;
  std::vector<double> rep_values() const;
  std::vector<double> row_coefficients(std::size_t i) const;
  std::vector<double> column_coefficients(std::size_t j) const;

  void merge(const IMMatrixSketch& other);

  std::size_t n() const noexcept { return n_; }
  std::size_t reps() const noexcept { return b1_.size(); }
  std::uint64_t row_seed() const noexcept { return row_seed_; }
  std::uint64_t column_seed() const noexcept { return column_seed_; }
  double truncation() const noexcept { return truncation_; }
  std::uint64_t m_seen() const noexcept { return m_seen_; }
  const BitHash& mask() const noexcept { return mask_; }
  std::span<const double> b1() const noexcept { return b1_; }
  std::span<const double> b2() const noexcept { return b2_; }
  std::span<const double> b3() const noexcept { return b3_; }

  std::size_t space_bytes() const;

  void serialize(std::vector<std::uint8_t>& out) const;
  static IMMatrixSketch deserialize(std::span<const std::uint8_t> in);

 private:
  std::size_t n_;
  BitHash mask_;
  std::uint64_t row_seed_;
  std::uint64_t column_seed_;
  double truncation_;
  std::uint64_t m_seen_ = 0;
  std::vector<double> b1_;
  std::vector<double> b2_;
  std::vector<double> b3_;
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Row and column coefficient seeds used by the single-seed IMMatrixSketch constructor.
std::uint64_t matrix_row_seed(std::uint64_t seed) noexcept;
std::uint64_t matrix_column_seed(std::uint64_t seed) noexcept;

}  // namespace isk
