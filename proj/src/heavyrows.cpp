#include "isk/heavyrows.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "isk/errors.hpp"
#include "isk/random.hpp"

namespace isk {

void HeavyRowsConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (buckets == 0) throw ConfigError("heavy-rows search needs tau >= 1");
  if (!(rho >= 1.0)) throw ConfigError("rho must be >= 1");
  key_row.validate();
}

HeavyRowsConfig HeavyRowsConfig::for_domain(std::size_t n, double alpha, double eps,
                                            Regime regime, const RCalibration& r,
                                            std::uint64_t seed) {
  HeavyRowsConfig cfg;
  cfg.alpha = alpha;
  cfg.seed = seed;
  cfg.key_row = KeyRowConfig::for_domain(n, eps, r, derive_seed(seed, SeedStream::kSplitHash));
  cfg.key_row.splits = splits_for(regime, n);
  cfg.rho = thresholds(n, eps, r).rho;
  cfg.buckets = heavy_buckets_for(regime, alpha, cfg.rho, n);
  return cfg;
}

Cover::Cover(std::vector<CoverEntry> entries) : entries_(std::move(entries)) {
  std::unordered_set<std::size_t> seen;
  for (const auto& e : entries_) {
    if (e.index == 0) throw std::invalid_argument("cover indices are 1-based");
    if (!(e.weight >= 0.0)) throw std::invalid_argument("cover weights must be non-negative");
    if (!seen.insert(e.index).second) throw std::invalid_argument("duplicate cover index");
  }
}

std::optional<double> Cover::weight_of(std::size_t index) const noexcept {
  for (const auto& e : entries_) {
    if (e.index == index) return e.weight;
  }
  return std::nullopt;
}

bool cover_check(const Cover& q, const WeightVector& v, double alpha, double eps) {
  for (const auto& e : q.entries()) {
    if (e.index < 1 || e.index > v.size()) return false;
    const double truth = v[e.index - 1];
    if (e.weight < (1.0 - eps) * truth || e.weight > (1.0 + eps) * truth) return false;
  }
  for (std::size_t i : heavy_rows(v, alpha)) {
    if (!q.weight_of(i)) return false;
  }
  return true;
}

BucketHash heavy_rows_buckets(std::size_t n, const HeavyRowsConfig& cfg) {
  return BucketHash(derive_seed(cfg.seed, SeedStream::kBucketHash), n, cfg.buckets);
}

Cover cover_from(const std::vector<KeyRowBank::BucketResult>& results) {
  std::vector<CoverEntry> entries;
  for (const auto& r : results) {
    if (r.outcome.is_found()) entries.push_back({r.outcome.index(), r.outcome.weight()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const CoverEntry& a, const CoverEntry& b) { return a.index < b.index; });
  return Cover(std::move(entries));
}

StreamingHeavyRows::StreamingHeavyRows(const SketchShape& shape, const HeavyRowsConfig& cfg,
                                       std::uint64_t context_seed, bool eager)
    : StreamingHeavyRows(shape, cfg, BitHash::constant(shape.n, true), context_seed, eager) {}

StreamingHeavyRows::StreamingHeavyRows(const SketchShape& shape, const HeavyRowsConfig& cfg,
                                       BitHash admit, std::uint64_t context_seed, bool eager)
    : cfg_(cfg),
      cols_(shape, context_seed),
      bank_(shape, std::move(admit), heavy_rows_buckets(shape.n, cfg), cfg.key_row.seed, eager) {
  cfg.validate();
  if (cfg.key_row.splits != shape.splits) throw ConfigError("config and shape disagree on N");
}

void StreamingHeavyRows::ingest(const StreamEvent& e) {
  check_event(e, cols_.shape().n);
  cols_.ingest(e);
  bank_.ingest(e, cols_);
}

void StreamingHeavyRows::ingest(std::span<const StreamEvent> events) {
  for (const auto& e : events) ingest(e);
}

Cover StreamingHeavyRows::cover() const { return cover_from(bank_.decide(cols_, cfg_.key_row)); }

Cover find_heavy_rows_explicit(std::size_t n, const BitHash& admit, const HeavyRowsConfig& cfg,
                               const MaskBlackbox& ba2, const MaskBlackbox& ba1) {
  cfg.validate();
  if (admit.size() != n) throw std::domain_error("mask size differs from n");
  const BucketHash h = heavy_rows_buckets(n, cfg);
  std::set<std::uint64_t> live;
  for (std::size_t i : admit.support()) live.insert(h.bucket_unchecked(i));
  std::vector<CoverEntry> entries;
  for (std::uint64_t k : live) {
    const KeyRowOutcome c = find_key_row(ba2, ba1, had(admit, h.indicator(k)), cfg.key_row);
    if (c.is_found()) entries.push_back({c.index(), c.weight()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const CoverEntry& a, const CoverEntry& b) { return a.index < b.index; });
  return Cover(std::move(entries));
}

}  // namespace isk
