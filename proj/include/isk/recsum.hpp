#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "isk/hadamard.hpp"
#include "isk/heavyrows.hpp"
#include "isk/keyrow_bank.hpp"
#include "isk/regime.hpp"
#include "isk/stream.hpp"

namespace isk {

/// phi = max(1, ceil(log2 n)).
std::size_t recursion_depth(std::size_t n);

/// H_1..H_phi under a master seed; result[j-1] is H_j.
std::vector<BitHash> level_hashes(std::size_t n, std::size_t phi, std::uint64_t seed);
/// Effective mask of level j: all ones for j = 0, else HAD(H_1, ..., H_j).
BitHash level_mask(const std::vector<BitHash>& hashes, std::size_t j);

struct FinalEstimate {
  /// y[j] = Y_j for j = 0..phi.
  std::vector<double> y;
  double result = 0.0;
  std::vector<std::size_t> cover_sizes;
  /// Mean fraction of abstaining splits over the searched buckets, per level
  /// (empty when the covers did not come from sketches).
  std::vector<double> abstention_rates;
  std::uint64_t f0 = 0;
  bool f0_overflow = false;
};

/// Unrolls Y_phi through the covers: for j = phi-1 down to 0,
///   Y_j = 2 Y_{j+1} + sum_{(i, w) in Q_j} (1 - 2 H_{j+1}(i)) w.
/// covers[j] is Q_j and hashes[j] is H_{j+1}.
FinalEstimate combine_levels(double y_phi, const std::vector<Cover>& covers,
                             const std::vector<BitHash>& hashes);

/// Exact cover of level j: the alpha-heavy rows among the level's survivors,
/// with their exact weights.
Cover exact_level_cover(const WeightVector& u, const BitHash& mask, double alpha);

/// Recursive sum with exact covers and an exact Y_phi; result 0 when more
/// than f0_cap rows with nonzero weight survive every level.
FinalEstimate simulated_recursive_sum(const WeightVector& u, const std::vector<BitHash>& hashes,
                                      double alpha, std::uint64_t f0_cap = 4096);

struct RecursiveSumConfig {
  std::size_t n = 1;
  double eps = 0.2;
  std::uint64_t seed = 0;
  Regime regime = Regime::kPractical;
  RCalibration calibration;
  /// Defaults to level_alpha_for(regime, eps, phi).
  std::optional<double> level_alpha;
  /// Defaults to f0_cap_for(regime).
  std::optional<std::uint64_t> f0_cap;

  void validate() const;
};

/// One-pass Recursive Sum for g = |x|: phi levels of Find-Heavy-Rows over the
/// nested substreams, sharing one stream context, plus an exact counter for the
/// rows that survive every level.
class RecursiveSum {
 public:
  explicit RecursiveSum(const RecursiveSumConfig& cfg);

  void ingest(const StreamEvent& e);
  void ingest(std::span<const StreamEvent> events);

  /// threads > 1 decides levels concurrently.
  FinalEstimate estimate(std::size_t threads = 1) const;

  std::size_t phi() const noexcept { return hashes_.size(); }
  const std::vector<BitHash>& hashes() const noexcept { return hashes_; }
  const SketchShape& shape() const noexcept { return shape_; }
  double level_alpha() const noexcept { return alpha_; }
  const HeavyRowsConfig& level_config(std::size_t j) const { return level_cfgs_.at(j); }
  const KeyRowBank& level_bank(std::size_t j) const { return banks_.at(j); }
  /// Rows surviving all levels and seen so far.
  std::uint64_t survivors() const noexcept { return base_rows_.size(); }
  std::uint64_t m() const noexcept { return cols_.m(); }

  /// Accumulators, counters and hash descriptors currently held.
  std::size_t space_bytes() const noexcept;

 private:
  double base_weight() const;

  RecursiveSumConfig cfg_;
  SketchShape shape_;
  double alpha_;
  std::uint64_t f0_cap_;
  std::vector<BitHash> hashes_;
  std::vector<HeavyRowsConfig> level_cfgs_;
  StreamContext cols_;
  std::vector<KeyRowBank> banks_;
  std::vector<std::uint64_t> col_counts_;
  std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, std::uint64_t>> base_rows_;
  bool overflow_ = false;
};

/// Recursive Sum over an explicit matrix with simulated blackboxes, for any g.
/// Covers come from find_heavy_rows_explicit at every level.
struct ExplicitRunConfig {
  double eps = 0.2;
  std::uint64_t seed = 0;
  Regime regime = Regime::kPractical;
  RCalibration calibration;
  std::optional<double> level_alpha;
  std::uint64_t f0_cap = 4096;
  double delta1 = 0.0;
  double delta2 = 1.0 / 32.0;
};
FinalEstimate explicit_recursive_sum(const ExplicitMatrix& a, const HadamardFunction& g,
                                     const ExplicitRunConfig& cfg);

}  // namespace isk
