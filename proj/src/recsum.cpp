#include "isk/recsum.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "isk/errors.hpp"
#include "isk/random.hpp"
#include "isk/simulated.hpp"

namespace isk {

std::size_t recursion_depth(std::size_t n) {
  if (n <= 2) return 1;
  return static_cast<std::size_t>(std::bit_width(n - 1));
}

std::vector<BitHash> level_hashes(std::size_t n, std::size_t phi, std::uint64_t seed) {
  std::vector<BitHash> out;
  out.reserve(phi);
  for (std::size_t j = 1; j <= phi; ++j) {
    out.push_back(BitHash::random(derive_seed(seed, SeedStream::kLevelHash, j), n));
  }
  return out;
}

BitHash level_mask(const std::vector<BitHash>& hashes, std::size_t j) {
  if (hashes.empty()) throw std::invalid_argument("no level hashes");
  if (j > hashes.size()) throw std::out_of_range("level beyond phi");
  BitHash mask = BitHash::constant(hashes.front().size(), true);
  for (std::size_t k = 0; k < j; ++k) mask = had(mask, hashes[k]);
  return mask;
}

FinalEstimate combine_levels(double y_phi, const std::vector<Cover>& covers,
                             const std::vector<BitHash>& hashes) {
  if (covers.size() != hashes.size()) throw std::invalid_argument("one cover per level expected");
  const std::size_t phi = hashes.size();
  FinalEstimate est;
  est.y.assign(phi + 1, 0.0);
  est.y[phi] = y_phi;
  est.cover_sizes.resize(phi);
  for (std::size_t j = phi; j-- > 0;) {
    double correction = 0.0;
    for (const auto& e : covers[j].entries()) {
      const double sign = hashes[j].at(e.index) ? -1.0 : 1.0;
      correction += sign * e.weight;
    }
    est.y[j] = 2.0 * est.y[j + 1] + correction;
    est.cover_sizes[j] = covers[j].size();
  }
  est.result = est.y[0];
  return est;
}

Cover exact_level_cover(const WeightVector& u, const BitHash& mask, double alpha) {
  if (mask.size() != u.size()) throw std::domain_error("mask and weight sizes differ");
  double total = 0.0;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    if (mask.at(i)) total += u[i - 1];
  }
  std::vector<CoverEntry> entries;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    if (mask.at(i) && u[i - 1] > alpha * total) entries.push_back({i, u[i - 1]});
  }
  return Cover(std::move(entries));
}

namespace {

struct BaseLevel {
  double weight = 0.0;
  std::uint64_t f0 = 0;
};

BaseLevel exact_base(const WeightVector& u, const BitHash& mask) {
  BaseLevel b;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    if (!mask.at(i) || u[i - 1] == 0.0) continue;
    b.weight += u[i - 1];
    ++b.f0;
  }
  return b;
}

FinalEstimate finish(const BaseLevel& base, std::uint64_t f0_cap, const std::vector<Cover>& covers,
                     const std::vector<BitHash>& hashes) {
  FinalEstimate est;
  if (base.f0 > f0_cap) {
    est.y.assign(hashes.size() + 1, 0.0);
    est.cover_sizes.reserve(covers.size());
    for (const auto& c : covers) est.cover_sizes.push_back(c.size());
    est.result = 0.0;
    est.f0_overflow = true;
  } else {
    est = combine_levels(base.weight, covers, hashes);
  }
  est.f0 = base.f0;
  return est;
}

}  // namespace

FinalEstimate simulated_recursive_sum(const WeightVector& u, const std::vector<BitHash>& hashes,
                                      double alpha, std::uint64_t f0_cap) {
  std::vector<Cover> covers;
  covers.reserve(hashes.size());
  for (std::size_t j = 0; j < hashes.size(); ++j) {
    covers.push_back(exact_level_cover(u, level_mask(hashes, j), alpha));
  }
  return finish(exact_base(u, level_mask(hashes, hashes.size())), f0_cap, covers, hashes);
}

void RecursiveSumConfig::validate() const {
  if (n == 0) throw ConfigError("recursive sum needs n >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (level_alpha && !(*level_alpha > 0.0 && *level_alpha < 1.0)) {
    throw ConfigError("level alpha must lie in (0, 1)");
  }
  if (!(calibration.c_r > 0.0)) throw ConfigError("c_r must be positive");
}

RecursiveSum::RecursiveSum(const RecursiveSumConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      shape_(shape_for(cfg.regime, cfg.n, cfg.eps)),
      alpha_(cfg.level_alpha.value_or(level_alpha_for(cfg.regime, cfg.eps, recursion_depth(cfg.n)))),
      f0_cap_(cfg.f0_cap.value_or(f0_cap_for(cfg.regime))),
      hashes_(level_hashes(cfg.n, recursion_depth(cfg.n), derive_seed(cfg.seed, SeedStream::kLevelHash))),
      cols_(shape_, derive_seed(cfg.seed, SeedStream::kColumnCoefficients)),
      col_counts_(cfg.n, 0) {
  const bool eager = cfg.regime == Regime::kPractical;
  for (std::size_t j = 0; j < hashes_.size(); ++j) {
    level_cfgs_.push_back(HeavyRowsConfig::for_domain(cfg.n, alpha_, cfg.eps, cfg.regime,
                                                      cfg.calibration,
                                                      derive_seed(cfg.seed, SeedStream::kLevel, j)));
    const HeavyRowsConfig& hc = level_cfgs_.back();
    banks_.emplace_back(shape_, level_mask(hashes_, j), heavy_rows_buckets(cfg.n, hc),
                        hc.key_row.seed, eager);
  }
}

void RecursiveSum::ingest(const StreamEvent& e) {
  check_event(e, cfg_.n);
  cols_.ingest(e);
  ++col_counts_[e.j - 1];
  for (std::size_t level = 0; level < hashes_.size(); ++level) {
    banks_[level].ingest_admitted(e, cols_);
    if (!hashes_[level].at(e.i)) return;
  }
  auto it = base_rows_.find(e.i);
  if (it == base_rows_.end()) {
    if (base_rows_.size() >= f0_cap_) {
      overflow_ = true;
      return;
    }
    it = base_rows_.emplace(e.i, std::unordered_map<std::uint64_t, std::uint64_t>{}).first;
  }
  ++it->second[e.j];
}

void RecursiveSum::ingest(std::span<const StreamEvent> events) {
  for (const auto& e : events) ingest(e);
}

double RecursiveSum::base_weight() const {
  const double m = static_cast<double>(cols_.m());
  double total = 0.0;
  for (const auto& [i, row] : base_rows_) {
    double fi = 0.0;
    for (const auto& [j, count] : row) fi += static_cast<double>(count);
    for (std::size_t j = 1; j <= cfg_.n; ++j) {
      const auto it = row.find(j);
      const double fij = it == row.end() ? 0.0 : static_cast<double>(it->second);
      total += std::fabs(fij / m - fi * static_cast<double>(col_counts_[j - 1]) / (m * m));
    }
  }
  return total;
}

FinalEstimate RecursiveSum::estimate(std::size_t threads) const {
  const std::size_t phi = hashes_.size();
  std::vector<Cover> covers(phi);
  std::vector<double> rates(phi, 0.0);
  if (cols_.m() == 0) {
    FinalEstimate est = combine_levels(0.0, covers, hashes_);
    est.abstention_rates = rates;
    return est;
  }
  auto run_level = [&](std::size_t j) {
    const auto results = banks_[j].decide(cols_, level_cfgs_[j].key_row);
    double sum = 0.0;
    for (const auto& r : results) sum += static_cast<double>(r.outcome.abstentions());
    if (!results.empty()) {
      rates[j] = sum / (static_cast<double>(results.size()) * static_cast<double>(shape_.splits));
    }
    covers[j] = cover_from(results);
  };
  if (threads <= 1 || phi == 1) {
    for (std::size_t j = 0; j < phi; ++j) run_level(j);
  } else {
    std::vector<std::thread> pool;
    const std::size_t workers = threads < phi ? threads : phi;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < phi; j += workers) run_level(j);
      });
    }
    for (auto& t : pool) t.join();
  }
  BaseLevel base;
  base.f0 = overflow_ ? f0_cap_ + 1 : base_rows_.size();
  if (!overflow_) base.weight = base_weight();
  FinalEstimate est = finish(base, f0_cap_, covers, hashes_);
  est.abstention_rates = rates;
  return est;
}

std::size_t RecursiveSum::space_bytes() const noexcept {
  std::size_t bytes = cols_.space_bytes() + col_counts_.size() * sizeof(std::uint64_t);
  for (const auto& b : banks_) bytes += b.space_bytes();
  for (const auto& [i, row] : base_rows_) bytes += (1 + row.size()) * 2 * sizeof(std::uint64_t);
  bytes += hashes_.size() * 2 * sizeof(std::uint64_t);
  return bytes;
}

FinalEstimate explicit_recursive_sum(const ExplicitMatrix& a, const HadamardFunction& g,
                                     const ExplicitRunConfig& cfg) {
  const std::size_t n = a.size();
  if (n == 0) throw ConfigError("empty matrix");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  const std::size_t phi = recursion_depth(n);
  const double alpha = cfg.level_alpha.value_or(level_alpha_for(cfg.regime, cfg.eps, phi));
  const auto hashes = level_hashes(n, phi, derive_seed(cfg.seed, SeedStream::kLevelHash));
  SimulatedBlackbox ba2(a, g, SimulatedBlackbox::Kind::kMatrix, cfg.calibration(n), cfg.delta2,
                        derive_seed(cfg.seed, SeedStream::kSimulation, 2));
  SimulatedBlackbox ba1(a, g, SimulatedBlackbox::Kind::kAggregate, cfg.eps / 2.0, cfg.delta1,
                        derive_seed(cfg.seed, SeedStream::kSimulation, 1));
  const MaskBlackbox ba2_fn = [&ba2](const BitHash& h) { return ba2(h); };
  const MaskBlackbox ba1_fn = [&ba1](const BitHash& h) { return ba1(h); };
  std::vector<Cover> covers;
  for (std::size_t j = 0; j < phi; ++j) {
    const HeavyRowsConfig hc = HeavyRowsConfig::for_domain(
        n, alpha, cfg.eps, cfg.regime, cfg.calibration, derive_seed(cfg.seed, SeedStream::kLevel, j));
    covers.push_back(find_heavy_rows_explicit(n, level_mask(hashes, j), hc, ba2_fn, ba1_fn));
  }
  return finish(exact_base(row_weights(g, a), level_mask(hashes, phi)), cfg.f0_cap, covers, hashes);
}

}  // namespace isk
