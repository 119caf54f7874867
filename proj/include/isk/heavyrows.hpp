#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "isk/hadamard.hpp"
#include "isk/keyrow.hpp"
#include "isk/keyrow_bank.hpp"
#include "isk/regime.hpp"
#include "isk/stream.hpp"

namespace isk {

struct HeavyRowsConfig {
  double alpha = 0.1;
  std::uint64_t buckets = 1;
  double rho = 1.0;
  KeyRowConfig key_row;
  std::uint64_t seed = 0;

  void validate() const;

  /// Buckets from heavy_buckets_for, key-row thresholds from r; the key-row
  /// seed is derived from seed.
  static HeavyRowsConfig for_domain(std::size_t n, double alpha, double eps, Regime regime,
                                    const RCalibration& r, std::uint64_t seed);
};

struct CoverEntry {
  std::size_t index;
  double weight;
};

/// (index, weight) pairs with distinct indices.
class Cover {
 public:
  Cover() = default;
  /// std::invalid_argument on duplicate indices, zero indices or negative weights.
  explicit Cover(std::vector<CoverEntry> entries);

  const std::vector<CoverEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::optional<double> weight_of(std::size_t index) const noexcept;

 private:
  std::vector<CoverEntry> entries_;
};

/// Both clauses against the exact vector v: every weight is within
/// (1 +- eps) v_i, and every alpha-heavy row of v appears.
bool cover_check(const Cover& q, const WeightVector& v, double alpha, double eps);

/// Find-Heavy-Rows over a stream, restricted to the rows admitted by a mask
/// (all rows by default).
class StreamingHeavyRows {
 public:
  StreamingHeavyRows(const SketchShape& shape, const HeavyRowsConfig& cfg,
                     std::uint64_t context_seed, bool eager = true);
  StreamingHeavyRows(const SketchShape& shape, const HeavyRowsConfig& cfg, BitHash admit,
                     std::uint64_t context_seed, bool eager = true);

  void ingest(const StreamEvent& e);
  void ingest(std::span<const StreamEvent> events);
  Cover cover() const;

  const KeyRowBank& bank() const noexcept { return bank_; }
  const StreamContext& context() const noexcept { return cols_; }
  std::size_t space_bytes() const noexcept { return cols_.space_bytes() + bank_.space_bytes(); }

 private:
  HeavyRowsConfig cfg_;
  StreamContext cols_;
  KeyRowBank bank_;
};

/// Bucket hash drawn by Find-Heavy-Rows under cfg.seed.
BucketHash heavy_rows_buckets(std::size_t n, const HeavyRowsConfig& cfg);

/// Cover from a finished bank decision: the found rows.
Cover cover_from(const std::vector<KeyRowBank::BucketResult>& results);

/// Find-Heavy-Rows with blackboxes over an explicit matrix, restricted to
/// admit. Only buckets that hold admitted rows are searched.
Cover find_heavy_rows_explicit(std::size_t n, const BitHash& admit, const HeavyRowsConfig& cfg,
                               const MaskBlackbox& ba2, const MaskBlackbox& ba1);

}  // namespace isk
