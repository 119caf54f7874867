#include "isk/keyrow_bank.hpp"

#include <algorithm>
#include <stdexcept>

#include "isk/errors.hpp"
#include "isk/kernels.hpp"
#include "isk/random.hpp"

namespace isk {

namespace {

constexpr std::uint64_t kMaxEagerBuckets = std::uint64_t{1} << 16;

}  // namespace

// ---- StreamContext ----

StreamContext::StreamContext(const SketchShape& shape, std::uint64_t seed)
    : shape_(shape),
      seed_(seed),
      b3_(shape.splits * shape.matrix_reps, 0.0),
      a2_(shape.stable_reps, 0.0),
      y_(shape.splits * shape.matrix_reps, 0.0),
      c_(shape.stable_reps, 0.0),
      x_(shape.splits * shape.matrix_reps, 0.0) {
  shape.validate();
}

std::uint64_t StreamContext::row_seed(std::size_t l) const noexcept {
  return derive_seed(seed_, SeedStream::kRowCoefficients, l);
}

std::uint64_t StreamContext::column_seed(std::size_t l) const noexcept {
  return derive_seed(seed_, SeedStream::kColumnCoefficients, l);
}

std::uint64_t StreamContext::stable_seed() const noexcept {
  return derive_seed(seed_, SeedStream::kStableCoefficients);
}

void StreamContext::ingest(const StreamEvent& e) {
  const std::uint64_t j = e.j;
  const auto& k = kernels::active();
  const std::size_t reps = shape_.matrix_reps;
  for (std::size_t l = 0; l < shape_.splits; ++l) {
    double* y = y_.data() + l * reps;
    k.fill_cauchy(kernels::make_cauchy_key(column_seed(l), j, reps), shape_.truncation, y, reps);
    k.add(b3_.data() + l * reps, y, reps);
  }
  k.fill_cauchy(kernels::make_cauchy_key(stable_seed(), j, shape_.stable_reps), kNoTruncation,
                c_.data(), shape_.stable_reps);
  k.add(a2_.data(), c_.data(), shape_.stable_reps);
  ++m_;
  row_ = e.i;
  x_ready_ = false;
}

const double* StreamContext::x(std::size_t l) const {
  if (!x_ready_) {
    const auto& k = kernels::active();
    const std::size_t reps = shape_.matrix_reps;
    for (std::size_t s = 0; s < shape_.splits; ++s) {
      k.fill_cauchy(kernels::make_cauchy_key(row_seed(s), row_, reps), shape_.truncation,
                    x_.data() + s * reps, reps);
    }
    x_ready_ = true;
  }
  return x_.data() + l * shape_.matrix_reps;
}

std::size_t StreamContext::space_bytes() const noexcept {
  return (b3_.size() + a2_.size()) * sizeof(double) + sizeof(m_);
}

// ---- KeyRowBank ----

KeyRowBank::KeyRowBank(const SketchShape& shape, BitHash admit, BucketHash buckets,
                       std::uint64_t seed, bool eager)
    : shape_(shape),
      admit_(std::move(admit)),
      buckets_(std::move(buckets)),
      seed_(seed) {
  shape.validate();
  if (admit_.size() != shape.n || buckets_.size() != shape.n) {
    throw ConfigError("bank mask and bucket hash must cover [1, n]");
  }
  splits_ = derive_bit_hashes(derive_seed(seed, SeedStream::kSplitHash), shape.n, shape.splits);
  if (eager && buckets_.buckets() <= kMaxEagerBuckets) {
    table_.reserve(buckets_.buckets());
    for (std::uint64_t k = 1; k <= buckets_.buckets(); ++k) table_.emplace(k, make_bucket());
  }
}

KeyRowBank::Bucket KeyRowBank::make_bucket() const {
  Bucket b;
  b.b1.assign(2 * shape_.splits * shape_.matrix_reps, 0.0);
  b.b2.assign(2 * shape_.splits * shape_.matrix_reps, 0.0);
  b.a1.assign(shape_.stable_reps, 0.0);
  return b;
}

KeyRowBank::Bucket& KeyRowBank::bucket(std::uint64_t k) {
  auto it = table_.find(k);
  if (it == table_.end()) it = table_.emplace(k, make_bucket()).first;
  return it->second;
}

void KeyRowBank::ingest(const StreamEvent& e, const StreamContext& cols) {
  check_event(e, shape_.n);
  if (admit_.at(e.i)) ingest_admitted(e, cols);
}

void KeyRowBank::ingest_admitted(const StreamEvent& e, const StreamContext& cols) {
  const auto& k = kernels::active();
  const std::size_t reps = shape_.matrix_reps;
  Bucket& b = bucket(buckets_.bucket_unchecked(e.i));
  for (std::size_t l = 0; l < shape_.splits; ++l) {
    const double* x = cols.x(l);
    const std::size_t off = offset(l, splits_[l].at(e.i));
    k.add_product(b.b1.data() + off, x, cols.y(l), reps);
    k.add(b.b2.data() + off, x, reps);
  }
  k.add(b.a1.data(), cols.c(), shape_.stable_reps);
  ++b.f_s;
  ++admitted_;
}

std::vector<SplitVote> KeyRowBank::votes_for(const Bucket& b, const StreamContext& cols,
                                             double tau_thresh, std::vector<SplitVote>& leans,
                                             std::size_t& abstentions) const {
  const auto& k = kernels::active();
  const std::size_t reps = shape_.matrix_reps;
  const double m = static_cast<double>(cols.m());
  std::vector<double> scratch(reps);
  std::vector<SplitVote> votes(shape_.splits);
  leans.assign(shape_.splits, SplitVote::kAbstain);
  abstentions = 0;
  for (std::size_t l = 0; l < shape_.splits; ++l) {
    double y[2];
    for (int side = 0; side < 2; ++side) {
      const std::size_t off = offset(l, side == 1);
      k.bilinear_residual(b.b1.data() + off, b.b2.data() + off, cols.b3(l), 1.0 / m, 1.0 / (m * m),
                          scratch.data(), reps);
      y[side] = median_inplace(scratch);
    }
    votes[l] = split_vote(y[0], y[1], tau_thresh);
    if (votes[l] == SplitVote::kAbstain) {
      leans[l] = split_lean(y[0], y[1]);
      ++abstentions;
    }
  }
  return votes;
}

double KeyRowBank::stable_for(const Bucket& b, const StreamContext& cols) const {
  const double m = static_cast<double>(cols.m());
  std::vector<double> scratch(shape_.stable_reps);
  kernels::active().aggregate_residual(b.a1.data(), cols.a2(), 1.0 / m,
                                       static_cast<double>(b.f_s) / (m * m), scratch.data(),
                                       shape_.stable_reps);
  return median_inplace(scratch);
}

std::vector<KeyRowBank::BucketResult> KeyRowBank::decide(const StreamContext& cols,
                                                         const KeyRowConfig& cfg) const {
  cfg.validate();
  if (cfg.splits != shape_.splits) throw ConfigError("config and bank disagree on N");
  std::vector<BucketResult> out;
  if (cols.m() == 0) return out;

  struct Pending {
    const Bucket* bucket;
    std::vector<SplitVote> votes;
    std::vector<SplitVote> leans;
    std::size_t abstentions;
    std::vector<RowTally> tallies;
  };
  std::unordered_map<std::uint64_t, Pending> pending;
  const double abstain_limit = cfg.abstain_fraction * static_cast<double>(cfg.splits);
  for (const auto& [k, b] : table_) {
    if (b.f_s == 0) continue;
    std::size_t abstentions = 0;
    std::vector<SplitVote> leans;
    auto votes = votes_for(b, cols, cfg.tau_thresh, leans, abstentions);
    if (static_cast<double>(abstentions) >= abstain_limit) {
      out.push_back({k, KeyRowOutcome::none(abstentions)});
      continue;
    }
    pending.emplace(k, Pending{&b, std::move(votes), std::move(leans), abstentions, {}});
  }
  if (!pending.empty()) {
    // One sweep over the admitted rows tallies every live bucket.
    for (std::size_t i = 1; i <= shape_.n; ++i) {
      if (!admit_.at(i)) continue;
      const auto it = pending.find(buckets_.bucket_unchecked(i));
      if (it == pending.end()) continue;
      Pending& p = it->second;
      p.tallies.push_back({i, agreement(p.votes, splits_, i), agreement(p.leans, splits_, i)});
    }
  }
  for (auto& [k, p] : pending) {
    const auto row = select_voted_row(p.tallies, cfg);
    if (row) {
      out.push_back({k, KeyRowOutcome::found(*row, stable_for(*p.bucket, cols), p.abstentions)});
    } else {
      out.push_back({k, KeyRowOutcome::none(p.abstentions)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const BucketResult& a, const BucketResult& b) { return a.bucket < b.bucket; });
  return out;
}

double KeyRowBank::matrix_estimate(std::uint64_t k, std::size_t l, bool side,
                                   const StreamContext& cols) const {
  if (l >= shape_.splits) throw std::out_of_range("split index out of range");
  const auto it = table_.find(k);
  if (it == table_.end() || cols.m() == 0) return 0.0;
  const double m = static_cast<double>(cols.m());
  std::vector<double> scratch(shape_.matrix_reps);
  const std::size_t off = offset(l, side);
  kernels::active().bilinear_residual(it->second.b1.data() + off, it->second.b2.data() + off,
                                      cols.b3(l), 1.0 / m, 1.0 / (m * m), scratch.data(),
                                      shape_.matrix_reps);
  return median_inplace(scratch);
}

double KeyRowBank::stable_estimate(std::uint64_t k, const StreamContext& cols) const {
  const auto it = table_.find(k);
  if (it == table_.end() || cols.m() == 0) return 0.0;
  return stable_for(it->second, cols);
}

std::size_t KeyRowBank::space_bytes() const noexcept {
  const std::size_t per_bucket =
      (4 * shape_.splits * shape_.matrix_reps + shape_.stable_reps) * sizeof(double) +
      sizeof(std::uint64_t);
  // Hash descriptors: the bucket hash and N split hashes, two field elements each.
  const std::size_t hashes = (1 + shape_.splits) * 2 * sizeof(std::uint64_t);
  return table_.size() * per_bucket + hashes;
}

// ---- StreamingKeyRow ----

StreamingKeyRow::StreamingKeyRow(const SketchShape& shape, BitHash h, const KeyRowConfig& cfg,
                                 std::uint64_t context_seed)
    : cfg_(cfg),
      cols_(shape, context_seed),
      bank_(shape, std::move(h), BucketHash(0, shape.n, 1), cfg.seed, true) {
  cfg.validate();
  if (cfg.splits != shape.splits) throw ConfigError("config and shape disagree on N");
}

void StreamingKeyRow::ingest(const StreamEvent& e) {
  check_event(e, cols_.shape().n);
  cols_.ingest(e);
  bank_.ingest(e, cols_);
}

void StreamingKeyRow::ingest(std::span<const StreamEvent> events) {
  for (const auto& e : events) ingest(e);
}

KeyRowOutcome StreamingKeyRow::outcome() const {
  const auto results = bank_.decide(cols_, cfg_);
  for (const auto& r : results) {
    if (r.outcome.is_found()) return r.outcome;
  }
  if (!results.empty()) return results.front().outcome;
  return KeyRowOutcome::none(cfg_.splits);
}

}  // namespace isk
