#include "isk/keyrow.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "isk/errors.hpp"
#include "isk/random.hpp"

namespace isk {

std::size_t default_splits(std::size_t n) {
  const double scaled = std::ceil(8.0 * std::log2(static_cast<double>(n < 1 ? 1 : n)));
  const auto splits = static_cast<std::size_t>(scaled);
  return splits < 16 ? 16 : splits;
}

void KeyRowConfig::validate() const {
  if (splits == 0) throw ConfigError("key-row search needs N >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (!(tau_thresh >= 1.0)) throw ConfigError("tau_thresh must be >= 1");
  if (!(vote_fraction > 0.5 && vote_fraction <= 1.0)) {
    throw ConfigError("vote fraction must lie in (1/2, 1]");
  }
  if (!(abstain_fraction > 0.0 && abstain_fraction <= 1.0)) {
    throw ConfigError("abstain fraction must lie in (0, 1]");
  }
  if (!(delta2 > 0.0 && delta2 < 1.0)) throw ConfigError("delta2 must lie in (0, 1)");
}

KeyRowConfig KeyRowConfig::for_domain(std::size_t n, double eps, const RCalibration& r,
                                      std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  KeyRowConfig cfg;
  cfg.splits = default_splits(n);
  cfg.tau_thresh = thresholds(n, eps, r).tau_thresh;
  cfg.eps = eps;
  cfg.seed = seed;
  return cfg;
}

KeyRowOutcome KeyRowOutcome::found(std::size_t index, double weight, std::size_t abstentions) {
  if (index == 0) throw std::out_of_range("rows are 1-based");
  if (!(weight >= 0.0)) throw std::domain_error("key-row weight must be non-negative");
  return KeyRowOutcome(index, weight, abstentions);
}

std::size_t KeyRowOutcome::index() const {
  if (index_ == 0) throw std::logic_error("no key row was found");
  return index_;
}

std::pair<long long, double> KeyRowOutcome::as_pair() const noexcept {
  if (index_ == 0) return {-1, 0.0};
  return {static_cast<long long>(index_), weight_};
}

SplitVote split_vote(double y0, double y1, double tau_thresh) noexcept {
  if (y0 == 0.0 && y1 == 0.0) return SplitVote::kAbstain;
  if (y0 >= tau_thresh * y1) return SplitVote::kZero;
  if (y1 >= tau_thresh * y0) return SplitVote::kOne;
  return SplitVote::kAbstain;
}

SplitVote split_lean(double y0, double y1) noexcept {
  if (y0 > y1) return SplitVote::kZero;
  if (y1 > y0) return SplitVote::kOne;
  return SplitVote::kAbstain;
}

std::size_t agreement(std::span<const SplitVote> votes, std::span<const BitHash> splits,
                      std::size_t i) {
  if (votes.size() != splits.size()) throw std::domain_error("one vote per split expected");
  std::size_t count = 0;
  for (std::size_t l = 0; l < votes.size(); ++l) {
    if (votes[l] == SplitVote::kAbstain) continue;
    if (splits[l].at(i) == (votes[l] == SplitVote::kOne)) ++count;
  }
  return count;
}

std::optional<std::size_t> select_voted_row(std::span<const RowTally> tallies, const KeyRowConfig& cfg) {
  const double needed = cfg.vote_fraction * static_cast<double>(cfg.splits);
  const RowTally* best = nullptr;
  for (const auto& t : tallies) {
    if (static_cast<double>(t.count) < needed) continue;
    if (!best || std::tie(t.count, t.lean, best->row) > std::tie(best->count, best->lean, t.row)) {
      best = &t;
    }
  }
  if (!best) return std::nullopt;
  return best->row;
}

std::optional<std::size_t> vote_tally(std::span<const std::size_t> counts, const KeyRowConfig& cfg) {
  std::vector<RowTally> tallies;
  tallies.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) tallies.push_back({i + 1, counts[i]});
  return select_voted_row(tallies, cfg);
}

std::optional<std::size_t> decide_key_row(std::span<const SplitVote> votes,
                                          std::span<const SplitVote> leans,
                                          std::span<const BitHash> splits,
                                          std::span<const std::size_t> candidates,
                                          const KeyRowConfig& cfg) {
  std::size_t abstentions = 0;
  for (SplitVote v : votes) abstentions += v == SplitVote::kAbstain ? 1 : 0;
  if (static_cast<double>(abstentions) >= cfg.abstain_fraction * static_cast<double>(cfg.splits)) {
    return std::nullopt;
  }
  std::vector<RowTally> tallies;
  tallies.reserve(candidates.size());
  for (std::size_t i : candidates) {
    tallies.push_back({i, agreement(votes, splits, i), leans.empty() ? 0 : agreement(leans, splits, i)});
  }
  return select_voted_row(tallies, cfg);
}

std::vector<BitHash> key_row_splits(std::size_t n, const KeyRowConfig& cfg) {
  return derive_bit_hashes(derive_seed(cfg.seed, SeedStream::kSplitHash), n, cfg.splits);
}

KeyRowOutcome find_key_row(const MaskBlackbox& ba2, const MaskBlackbox& ba1, const BitHash& h,
                           const KeyRowConfig& cfg) {
  cfg.validate();
  const std::vector<BitHash> splits = key_row_splits(h.size(), cfg);
  std::vector<SplitVote> votes(cfg.splits);
  std::vector<SplitVote> leans(cfg.splits, SplitVote::kAbstain);
  std::size_t abstentions = 0;
  for (std::size_t l = 0; l < cfg.splits; ++l) {
    const double y1 = ba2(had(h, splits[l]));
    const double y0 = ba2(had(h, complement(splits[l])));
    votes[l] = split_vote(y0, y1, cfg.tau_thresh);
    if (votes[l] == SplitVote::kAbstain) {
      leans[l] = split_lean(y0, y1);
      ++abstentions;
    }
  }
  const std::vector<std::size_t> candidates = h.support();
  const auto row = decide_key_row(votes, leans, splits, candidates, cfg);
  if (!row) return KeyRowOutcome::none(abstentions);
  return KeyRowOutcome::found(*row, ba1(h), abstentions);
}

SplitMass split_mass(const WeightVector& u, const BitHash& h) {
  if (u.size() != h.size()) throw std::domain_error("weight vector and hash sizes differ");
  SplitMass s{0.0, 0.0};
  for (std::size_t i = 1; i <= u.size(); ++i) (h.at(i) ? s.ones : s.zeros) += u[i - 1];
  return s;
}

}  // namespace isk
