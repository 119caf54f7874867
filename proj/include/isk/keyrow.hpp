#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "isk/hadamard.hpp"
#include "isk/hashing.hpp"

namespace isk {

/// N = max(16, ceil(8 log2 n)).
std::size_t default_splits(std::size_t n);

struct KeyRowConfig {
  std::size_t splits = 16;
  double tau_thresh = 2048.0;
  double eps = 0.5;
  double delta2 = 1.0 / 32.0;
  double vote_fraction = 0.75;
  double abstain_fraction = 2.0 / 3.0;
  std::uint64_t seed = 0;

  /// ConfigError on out-of-range fields.
  void validate() const;

  /// N from default_splits, tau_thresh from thresholds(n, eps, r).
  static KeyRowConfig for_domain(std::size_t n, double eps, const RCalibration& r,
                                 std::uint64_t seed);
};

/// Either no key row, written (-1, 0), or (index, weight estimate).
class KeyRowOutcome {
 public:
  static KeyRowOutcome none(std::size_t abstentions = 0) {
    return KeyRowOutcome(0, 0.0, abstentions);
  }
  static KeyRowOutcome found(std::size_t index, double weight, std::size_t abstentions = 0);

  bool is_found() const noexcept { return index_ != 0; }
  /// 1-based row; std::logic_error when nothing was found.
  std::size_t index() const;
  double weight() const noexcept { return weight_; }
  /// (-1, 0) or (i, weight).
  std::pair<long long, double> as_pair() const noexcept;
  /// Number of split iterations that abstained (diagnostic).
  std::size_t abstentions() const noexcept { return abstentions_; }

 private:
  KeyRowOutcome(std::size_t index, double weight, std::size_t abstentions)
      : index_(index), weight_(weight), abstentions_(abstentions) {}

  std::size_t index_;
  double weight_;
  std::size_t abstentions_;
};

enum class SplitVote : std::uint8_t { kZero = 0, kOne = 1, kAbstain = 2 };

/// kZero if y0 >= tau y1, kOne if y1 >= tau y0, else kAbstain. Two zero
/// estimates say nothing about either side and count as an abstention.
SplitVote split_vote(double y0, double y1, double tau_thresh) noexcept;

/// Side with the larger estimate (kAbstain when equal). Consulted only for
/// abstaining splits, to break ties between rows with equal agreement.
SplitVote split_lean(double y0, double y1) noexcept;

/// |{l : splits[l](i) == votes[l]}|.
std::size_t agreement(std::span<const SplitVote> votes, std::span<const BitHash> splits,
                      std::size_t i);

struct RowTally {
  std::size_t row;
  /// Agreement with the decisive votes.
  std::size_t count;
  /// Agreement with the leans of the abstaining splits.
  std::size_t lean = 0;
};

/// Among rows with count >= vote_fraction * N: the largest count, then the
/// largest lean, then the lowest index.
std::optional<std::size_t> select_voted_row(std::span<const RowTally> tallies, const KeyRowConfig& cfg);
/// Dense form: counts[i-1] is the agreement of row i.
std::optional<std::size_t> vote_tally(std::span<const std::size_t> counts, const KeyRowConfig& cfg);

/// Decision phase: too many abstentions -> none, else the voted row among
/// candidates (or none). leans may be empty; otherwise leans[l] is the
/// split_lean of an abstaining split l and kAbstain elsewhere.
std::optional<std::size_t> decide_key_row(std::span<const SplitVote> votes,
                                          std::span<const SplitVote> leans,
                                          std::span<const BitHash> splits,
                                          std::span<const std::size_t> candidates,
                                          const KeyRowConfig& cfg);

/// The N split hashes used by find_key_row under cfg.seed.
std::vector<BitHash> key_row_splits(std::size_t n, const KeyRowConfig& cfg);

/// Blackbox returning an estimate for a row mask.
using MaskBlackbox = std::function<double(const BitHash&)>;

/// Find-Key-Row over arbitrary blackboxes: ba2 on HAD(h, H_l) and
/// HAD(h, complement(H_l)) for every split, ba1 on h for the weight.
KeyRowOutcome find_key_row(const MaskBlackbox& ba2, const MaskBlackbox& ba1, const BitHash& h,
                           const KeyRowConfig& cfg);

/// Masses of u on the two sides of a split: x = sum_{h(i)=1} u_i, y = rest.
struct SplitMass {
  double ones;
  double zeros;
};
SplitMass split_mass(const WeightVector& u, const BitHash& h);

}  // namespace isk
