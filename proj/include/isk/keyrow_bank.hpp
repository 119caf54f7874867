#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isk/hashing.hpp"
#include "isk/keyrow.hpp"
#include "isk/regime.hpp"
#include "isk/stream.hpp"

namespace isk {

/// State shared by every key-row search over one stream. The implicit matrix
/// at any row mask keeps the global m and column marginals, so B3 (one per
/// split) and A2 do not depend on the mask and are kept once. ingest() leaves
/// the event's column coefficients in scratch; row coefficients are filled on
/// first use and reused by every bank the row reaches.
class StreamContext {
 public:
  StreamContext(const SketchShape& shape, std::uint64_t seed);

  void ingest(const StreamEvent& e);

  const SketchShape& shape() const noexcept { return shape_; }
  std::uint64_t m() const noexcept { return m_; }
  /// Coefficients y^l of the last ingested column.
  const double* y(std::size_t l) const noexcept { return y_.data() + l * shape_.matrix_reps; }
  /// Stable coefficients c of the last ingested column.
  const double* c() const noexcept { return c_.data(); }
  const double* b3(std::size_t l) const noexcept { return b3_.data() + l * shape_.matrix_reps; }
  const double* a2() const noexcept { return a2_.data(); }
  /// Coefficients x^l of the last ingested row.
  const double* x(std::size_t l) const;

  std::uint64_t row_seed(std::size_t l) const noexcept;
  std::uint64_t column_seed(std::size_t l) const noexcept;
  std::uint64_t stable_seed() const noexcept;

  std::size_t space_bytes() const noexcept;

 private:
  SketchShape shape_;
  std::uint64_t seed_;
  std::uint64_t m_ = 0;
  std::vector<double> b3_;
  std::vector<double> a2_;
  std::vector<double> y_;
  std::vector<double> c_;
  std::uint64_t row_ = 0;
  mutable bool x_ready_ = false;
  mutable std::vector<double> x_;
};

/// Row-side state of Find-Key-Row for every bucket of a BucketHash over the
/// rows admitted by a mask. Bucket k holds, for each split l and side s, the
/// B1/B2 accumulators of a matrix sketch with mask HAD(admit, H_k, H_l or its
/// complement), plus A1 and F_S of a stable sketch with mask HAD(admit, H_k).
/// Split hashes are shared across buckets.
class KeyRowBank {
 public:
  /// eager allocates every bucket up front (fixed footprint); otherwise
  /// buckets appear on their first event.
  KeyRowBank(const SketchShape& shape, BitHash admit, BucketHash buckets, std::uint64_t seed,
             bool eager);

  /// Routes e if admit(e.i); cols must already have ingested e.j.
  void ingest(const StreamEvent& e, const StreamContext& cols);
  /// Same, for a row the caller already knows is admitted.
  void ingest_admitted(const StreamEvent& e, const StreamContext& cols);

  struct BucketResult {
    std::uint64_t bucket;
    KeyRowOutcome outcome;
  };
  /// Key-row decision for every bucket that received events.
  std::vector<BucketResult> decide(const StreamContext& cols, const KeyRowConfig& cfg) const;

  /// The (l, side) matrix estimate and the stable estimate of one bucket; 0
  /// for buckets without events.
  double matrix_estimate(std::uint64_t bucket, std::size_t l, bool side,
                         const StreamContext& cols) const;
  double stable_estimate(std::uint64_t bucket, const StreamContext& cols) const;

  const BitHash& admit() const noexcept { return admit_; }
  const BucketHash& buckets() const noexcept { return buckets_; }
  const std::vector<BitHash>& splits() const noexcept { return splits_; }
  std::size_t allocated_buckets() const noexcept { return table_.size(); }
  std::uint64_t admitted_events() const noexcept { return admitted_; }
  std::size_t space_bytes() const noexcept;

 private:
  struct Bucket {
    std::vector<double> b1;
    std::vector<double> b2;
    std::vector<double> a1;
    std::uint64_t f_s = 0;
  };

  Bucket make_bucket() const;
  Bucket& bucket(std::uint64_t k);
  /// Votes per split; leans is filled for the abstaining splits.
  std::vector<SplitVote> votes_for(const Bucket& b, const StreamContext& cols, double tau_thresh,
                                   std::vector<SplitVote>& leans, std::size_t& abstentions) const;
  double stable_for(const Bucket& b, const StreamContext& cols) const;
  std::size_t offset(std::size_t l, bool side) const noexcept {
    return (2 * l + (side ? 1 : 0)) * shape_.matrix_reps;
  }

  SketchShape shape_;
  BitHash admit_;
  BucketHash buckets_;
  std::uint64_t seed_;
  std::vector<BitHash> splits_;
  std::unordered_map<std::uint64_t, Bucket> table_;
  std::uint64_t admitted_ = 0;
};

/// Find-Key-Row over a stream in one pass, for a fixed mask H.
class StreamingKeyRow {
 public:
  /// cfg.splits must equal shape.splits; cfg.seed seeds the splits and
  /// context_seed the coefficients.
  StreamingKeyRow(const SketchShape& shape, BitHash h, const KeyRowConfig& cfg,
                  std::uint64_t context_seed);

  void ingest(const StreamEvent& e);
  void ingest(std::span<const StreamEvent> events);
  KeyRowOutcome outcome() const;

  const StreamContext& context() const noexcept { return cols_; }
  const KeyRowBank& bank() const noexcept { return bank_; }
  std::size_t space_bytes() const noexcept { return cols_.space_bytes() + bank_.space_bytes(); }

 private:
  KeyRowConfig cfg_;
  StreamContext cols_;
  KeyRowBank bank_;
};

}  // namespace isk
