// Acceptance runner: one PASS/FAIL line per criterion. Each criterion checks
// its own statistics and its own wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isk/calibration.hpp"
#include "isk/generators.hpp"
#include "isk/hadamard.hpp"
#include "isk/heavyrows.hpp"
#include "isk/keyrow.hpp"
#include "isk/keyrow_bank.hpp"
#include "isk/random.hpp"
#include "isk/recsum.hpp"
#include "isk/regime.hpp"
#include "isk/sketches.hpp"
#include "isk/stream.hpp"

using namespace isk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [below target]");
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double sum(const WeightVector& u) { return std::accumulate(u.begin(), u.end(), 0.0); }

ExactHistogram histogram(std::size_t n, const std::vector<StreamEvent>& events) {
  ExactHistogram h(n);
  h.ingest(events);
  return h;
}

std::uint64_t trial_seed(int criterion, std::uint64_t cell, std::uint64_t t) {
  return derive_seed(derive_seed(0xACCE97ULL + criterion, SeedStream::kTrial, cell),
                     SeedStream::kTrial, t);
}

Outcome oracle_exactness() {
  const auto g = HadamardFunction::abs_value();
  struct Case {
    const char* name;
    std::size_t n;
    std::vector<StreamEvent> events;
    double expected;
  };
  const std::vector<Case> cases{
      {"diagonal", 2, {{1, 1}, {2, 2}}, 1.0},
      {"independent", 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}, 0.0},
      {"point mass", 3, {{2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}}, 0.0},
  };
  Outcome out;
  for (const auto& c : cases) {
    const double got = exact_distance(histogram(c.n, c.events), g);
    out.require(std::fabs(got - c.expected) <= 1e-12, fmt("%s %.3g", c.name, got));
  }
  return out;
}

Outcome dominant_row() {
  SplitMix64 gen(derive_seed(2, SeedStream::kTrial));
  const double epss[] = {0.1, 0.3, 0.5};
  const HadamardFunction gs[] = {HadamardFunction::abs_value(), HadamardFunction::abs_power(0.5)};
  int held = 0;
  int total = 0;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + gen.below(31);
    const double eps = epss[t % 3];
    const HadamardFunction& g = gs[(t / 3) % 2];
    const std::size_t h = 1 + gen.below(n);
    ExplicitMatrix a(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) a.at(i, j) = gen.uniform() * 2.0 - 1.0;
    }
    // Scale row h so that it holds a fraction f >= 1 - eps/2 of the weight.
    const double f = 1.0 - eps / 2.0 * gen.uniform();
    const auto u = row_weights(g, a);
    const double rest = sum(u) - u[h - 1];
    const double target = rest * f / (1.0 - f);
    const double power = g.is_l1() ? 1.0 : g.exponent();
    const double scale = std::pow(target / u[h - 1], 1.0 / power);
    for (std::size_t j = 1; j <= n; ++j) a.at(h, j) *= scale;
    const double uh = row_weights(g, a)[h - 1];
    const double agg = aggregate_norm(g, a, BitHash::constant(n, true));
    const double gap = std::fabs(uh - agg) / agg;
    worst = std::max(worst, gap / eps);
    // A hair of slack for rounding in the two sums.
    held += std::fabs(uh - agg) <= eps * agg * (1.0 + 1e-12);
    ++total;
  }
  Outcome out;
  out.require(held == total, fmt("%d/%d hold, max gap %.3f of eps", held, total, worst));
  return out;
}

Outcome split_balance() {
  int low = 0;
  int trials = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    SplitMix64 gen(trial_seed(3, 0, t));
    const std::size_t n = 16 + gen.below(113);
    WeightVector u(n);
    for (auto& x : u) x = gen.uniform() < 0.2 ? 5.0 * gen.uniform() : gen.uniform();
    // Capping lowers the total, so cap until nothing exceeds 1/16 of it.
    double total = sum(u);
    for (int pass = 0; pass < 64 && *std::max_element(u.begin(), u.end()) > total / 16.0; ++pass) {
      for (auto& x : u) x = std::min(x, 0.99 * total / 16.0);
      total = sum(u);
    }
    if (*std::max_element(u.begin(), u.end()) > total / 16.0) continue;
    const auto mass = split_mass(u, BitHash::random(gen(), n));
    low += std::min(mass.ones, mass.zeros) <= total / 4.0;
    ++trials;
  }
  Outcome out;
  const double freq = static_cast<double>(low) / trials;
  out.require(trials >= 9000, fmt("%d qualifying vectors", trials));
  out.require(freq <= 0.30, fmt("unbalanced split frequency %.4f", freq));
  return out;
}

Outcome bilinear_exactness() {
  double worst_matrix = 0.0;
  double worst_stable = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::uint64_t seed = trial_seed(4, 0, t);
    SplitMix64 gen(seed);
    const std::size_t n = 2 + gen.below(15);
    const std::size_t m = 20 + gen.below(500);
    const GeneratorSpec spec{GeneratorMode::kMixture, gen.uniform()};
    const auto events = generate(spec, n, m, gen());
    BitHash mask = BitHash::random(gen(), n);
    if (mask.support().empty()) mask = complement(mask);

    IMMatrixSketch ba2(n, mask, 32, gen());
    StableL1VectorSketch ba1(n, mask, 64, gen());
    ba2.ingest(events);
    ba1.ingest(events);
    const ExplicitMatrix a = ImplicitMatrixView(histogram(n, events)).to_explicit();
    const auto support = mask.support();

    // Per repetition: sum_{i in mask, j} x_i y_j a_ij. The tolerance is taken
    // relative to the sum of absolute terms, which bounds the rounding error.
    std::vector<std::vector<double>> x(n + 1), y(n + 1), c(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
      x[k] = ba2.row_coefficients(k);
      y[k] = ba2.column_coefficients(k);
      c[k] = ba1.coefficients(k);
    }
    const auto got2 = ba2.rep_values();
    for (std::size_t r = 0; r < got2.size(); ++r) {
      double ref = 0.0;
      double scale = 0.0;
      for (std::size_t i : support) {
        for (std::size_t j = 1; j <= n; ++j) {
          const double term = x[i][r] * y[j][r] * a.at(i, j);
          ref += term;
          scale += std::fabs(term);
        }
      }
      if (scale > 0.0) worst_matrix = std::max(worst_matrix, std::fabs(got2[r] - ref) / scale);
    }
    const auto got1 = ba1.rep_values();
    for (std::size_t r = 0; r < got1.size(); ++r) {
      double ref = 0.0;
      double scale = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        double v = 0.0;
        for (std::size_t i : support) v += a.at(i, j);
        ref += c[j][r] * v;
        for (std::size_t i : support) scale += std::fabs(c[j][r] * a.at(i, j));
      }
      if (scale > 0.0) worst_stable = std::max(worst_stable, std::fabs(got1[r] - ref) / scale);
    }
  }
  Outcome out;
  out.require(worst_matrix <= 1e-6, fmt("matrix sketch max rel err %.2e", worst_matrix));
  out.require(worst_stable <= 1e-6, fmt("stable sketch max rel err %.2e", worst_stable));
  return out;
}

const std::vector<GeneratorSpec>& families() {
  static const std::vector<GeneratorSpec> f{GeneratorSpec::parse("independent"),
                                            GeneratorSpec::parse("perfect-dependence"),
                                            GeneratorSpec::parse("mixture:0.5")};
  return f;
}

Outcome stable_accuracy() {
  const std::size_t n = 64;
  const auto g = HadamardFunction::abs_value();
  Outcome out;
  for (std::size_t f = 0; f < families().size(); ++f) {
    int inside = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = trial_seed(5, f, t);
      const auto events = generate(families()[f], n, 4000, derive_seed(seed, SeedStream::kGenerator));
      const ExplicitMatrix a = ImplicitMatrixView(histogram(n, events)).to_explicit();
      // The full mask has a zero aggregate, so each trial draws a proper subset.
      BitHash mask = BitHash::random(derive_seed(seed, SeedStream::kSplitHash), n);
      for (std::uint64_t k = 1; aggregate_norm(g, a, mask) == 0.0; ++k) {
        mask = BitHash::random(derive_seed(seed, SeedStream::kSplitHash, k), n);
      }
      const double truth = aggregate_norm(g, a, mask);
      StableL1VectorSketch sketch(n, mask, 512, derive_seed(seed, SeedStream::kSimulation));
      sketch.ingest(events);
      inside += std::fabs(sketch.estimate() - truth) <= 0.1 * truth;
    }
    const double cov = static_cast<double>(inside) / trials;
    out.require(cov >= 0.9, fmt("%s %.3f", families()[f].name().c_str(), cov));
  }
  return out;
}

Outcome matrix_bracket() {
  CalibrationGrid grid;
  grid.seed = 0xCA11B;
  const CalibrationFit fit = fit_calibration(grid);
  Outcome out;
  out.require(fit.fitted, fmt("c_r %.4f from %zu trials", fit.c_r, fit.trials_used));
  const RCalibration r{fit.c_r};
  const auto g = HadamardFunction::abs_value();
  for (std::size_t n : {16u, 64u}) {
    int inside = 0;
    int used = 0;
    for (int t = 0; used < 200; ++t) {
      const std::uint64_t seed = trial_seed(6, n, t);
      const auto& family = families()[t % families().size()];
      const auto events = generate(family, n, grid.m, derive_seed(seed, SeedStream::kGenerator));
      const double exact = exact_distance(histogram(n, events), g);
      if (!(exact > 0.0)) continue;
      IMMatrixSketch sketch(n, BitHash::constant(n, true), grid.reps,
                            derive_seed(seed, SeedStream::kSimulation));
      sketch.ingest(events);
      const double ratio = sketch.estimate() / exact;
      const double rn = r(n);
      inside += ratio >= 1.0 / rn && ratio <= rn;
      ++used;
    }
    const double cov = static_cast<double>(inside) / used;
    out.require(cov >= 0.9, fmt("n=%zu r=%.2f coverage %.3f", n, r(n), cov));
  }
  return out;
}

struct KeyRowRun {
  KeyRowOutcome outcome;
  WeightVector u;
};

// Events on the rows outside the mask form the background; `active` lists
// (row, share) for rows inside the mask. Other rows of the mask stay empty.
KeyRowRun run_key_row(const BitHash& mask, std::vector<std::pair<std::uint64_t, double>> active,
                      std::size_t m, std::uint64_t seed) {
  const std::size_t n = mask.size();
  const double eps = 0.3;
  const SketchShape shape = shape_for(Regime::kPractical, n, eps);
  KeyRowConfig cfg = KeyRowConfig::for_domain(n, eps, RCalibration{}, derive_seed(seed, SeedStream::kSplitHash));
  cfg.splits = shape.splits;
  std::vector<std::uint64_t> outside;
  for (std::uint64_t i = 1; i <= n; ++i) {
    if (!mask.at(i)) outside.push_back(i);
  }
  SplitMix64 gen(derive_seed(seed, SeedStream::kGenerator));
  std::vector<StreamEvent> events;
  for (std::size_t k = 0; k < m; ++k) {
    double u = gen.uniform();
    StreamEvent e{outside[gen.below(outside.size())], 1 + gen.below(n)};
    for (const auto& [row, share] : active) {
      if (u < share) {
        // The first active row is perfectly dependent; the others spread out.
        e = {row, row == active.front().first ? row : 1 + gen.below(n)};
        break;
      }
      u -= share;
    }
    events.push_back(e);
  }
  StreamingKeyRow key(shape, mask, cfg, derive_seed(seed, SeedStream::kSimulation));
  key.ingest(events);
  return {key.outcome(), ImplicitMatrixView(histogram(n, events)).row_weights(HadamardFunction::abs_value())};
}

BitHash rows_mask(std::size_t n, const std::vector<std::uint64_t>& rows) {
  std::vector<bool> bits(n, false);
  for (auto r : rows) bits[r - 1] = true;
  return BitHash::pattern(bits);
}

std::vector<std::uint64_t> distinct_rows(SplitMix64& gen, std::size_t n, std::size_t count) {
  std::vector<std::uint64_t> rows(n);
  std::iota(rows.begin(), rows.end(), 1);
  for (std::size_t k = 0; k < count; ++k) std::swap(rows[k], rows[k + gen.below(n - k)]);
  rows.resize(count);
  return rows;
}

Outcome key_row_cases() {
  const std::size_t n = 16;
  const double eps = 0.3;
  const int trials = 200;
  const double rho = thresholds(n, eps, RCalibration{}).rho;
  Outcome out;

  // Case 1: one active row in a mask whose other rows carry no events, so it
  // is a key row of the masked matrix.
  int right = 0;
  int found = 0;
  int accurate = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = trial_seed(7, 1, t);
    SplitMix64 gen(seed);
    const auto rows = distinct_rows(gen, n, 4);
    const auto run = run_key_row(rows_mask(n, rows), {{rows[0], 1.0 / 3.0}}, 1500, seed);
    if (!run.outcome.is_found()) continue;
    ++found;
    const double truth = run.u[rows[0] - 1];
    right += run.outcome.index() == rows[0];
    accurate += std::fabs(run.outcome.weight() - truth) <= eps * truth;
  }
  out.require(right >= 0.95 * trials, fmt("key row index %d/%d", right, trials));
  out.require(found > 0 && accurate >= 0.9 * found, fmt("weight within 0.3 in %d/%d found", accurate, found));

  // Case 2: uniform independent stream over the full mask.
  int none = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = trial_seed(7, 2, t);
    const SketchShape shape = shape_for(Regime::kPractical, n, eps);
    KeyRowConfig cfg = KeyRowConfig::for_domain(n, eps, RCalibration{}, derive_seed(seed, SeedStream::kSplitHash));
    cfg.splits = shape.splits;
    StreamingKeyRow key(shape, BitHash::constant(n, true), cfg, derive_seed(seed, SeedStream::kSimulation));
    key.ingest(generate(GeneratorSpec::parse("independent"), n, 1500, derive_seed(seed, SeedStream::kGenerator)));
    none += !key.outcome().is_found();
  }
  out.require(none >= 0.9 * trials, fmt("no key row %d/%d", none, trials));

  // Case 3: a (1 - eps/8)-heavy row next to a light but nonzero row.
  int wrong = 0;
  int fixtures = 0;
  int heavy_found = 0;
  int heavy_accurate = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = trial_seed(7, 3, t);
    SplitMix64 gen(seed);
    const auto rows = distinct_rows(gen, n, 3);
    const auto run = run_key_row(rows_mask(n, rows), {{rows[0], 1.0 / 3.0}, {rows[1], 0.004}}, 1500, seed);
    const double ua = run.u[rows[0] - 1];
    const double ub = run.u[rows[1] - 1];
    fixtures += ua > (1.0 - eps / 8.0) * (ua + ub) && ub > 0.0 && ua <= rho * ub;
    if (!run.outcome.is_found()) continue;
    ++heavy_found;
    wrong += run.outcome.index() != rows[0];
    heavy_accurate += run.outcome.index() == rows[0] && std::fabs(run.outcome.weight() - ua) <= eps * ua;
  }
  out.require(fixtures == trials, fmt("heavy non-key fixtures %d/%d", fixtures, trials));
  out.require(wrong == 0, fmt("wrong index %d (found %d, accurate %d)", wrong, heavy_found, heavy_accurate));
  return out;
}

Outcome cover_validity() {
  const std::size_t n = 16;
  const double alpha = 0.1;
  const double eps = 0.3;
  const int trials = 200;
  int valid = 0;
  bool bound_ok = true;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = trial_seed(8, 0, t);
    const auto events = generate(GeneratorSpec::parse("planted-rows"), n, 3000,
                                 derive_seed(seed, SeedStream::kGenerator));
    const auto cfg = HeavyRowsConfig::for_domain(n, alpha, eps, Regime::kPractical, RCalibration{}, seed);
    StreamingHeavyRows heavy(shape_for(Regime::kPractical, n, eps), cfg,
                             derive_seed(seed, SeedStream::kSimulation), false);
    heavy.ingest(events);
    const auto u = ImplicitMatrixView(histogram(n, events)).row_weights(HadamardFunction::abs_value());
    bound_ok = bound_ok && heavy_rows(u, alpha).size() <= static_cast<std::size_t>(1.0 / alpha);
    valid += cover_check(heavy.cover(), u, alpha, eps);
  }
  Outcome out;
  out.require(bound_ok, "heavy-row count bound");
  out.require(valid >= 0.85 * trials, fmt("cover valid %d/%d", valid, trials));
  return out;
}

// Mean of Y_0 over every assignment of the level hashes.
double exhaustive_mean(const WeightVector& u, std::size_t phi, double alpha) {
  const std::size_t n = u.size();
  const std::uint64_t outcomes = std::uint64_t{1} << (n * phi);
  double total = 0.0;
  for (std::uint64_t code = 0; code < outcomes; ++code) {
    std::vector<BitHash> hashes;
    for (std::size_t j = 0; j < phi; ++j) {
      std::vector<bool> bits(n);
      for (std::size_t i = 0; i < n; ++i) bits[i] = (code >> (j * n + i)) & 1U;
      hashes.push_back(BitHash::pattern(bits));
    }
    total += simulated_recursive_sum(u, hashes, alpha).result;
  }
  return total / static_cast<double>(outcomes);
}

Outcome recursive_sum_oracle() {
  Outcome out;
  SplitMix64 gen(trial_seed(9, 0, 0));
  double worst = 0.0;
  int cases = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t phi = 1; phi <= 2; ++phi) {
      for (int t = 0; t < 25; ++t) {
        WeightVector u(n);
        for (auto& x : u) x = gen.uniform() < 0.2 ? 0.0 : 10.0 * gen.uniform();
        const double alpha = 0.05 + 0.9 * gen.uniform();
        const double truth = sum(u);
        const double mean = exhaustive_mean(u, phi, alpha);
        worst = std::max(worst, truth > 0.0 ? std::fabs(mean - truth) / truth : std::fabs(mean));
        ++cases;
      }
    }
  }
  out.require(worst <= 1e-12, fmt("exhaustive E[Y0] over %d cases, max rel dev %.1e", cases, worst));

  const std::size_t n = 8;
  const double eps = 0.2;
  const std::size_t phi = recursion_depth(n);
  const double alpha = level_alpha_for(Regime::kFaithful, eps, phi);
  int good = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 g(trial_seed(9, 1, t));
    WeightVector u(n);
    for (auto& x : u) x = g.uniform() < 0.3 ? 10.0 * g.uniform() : g.uniform();
    const auto hashes = level_hashes(n, phi, g());
    const double est = simulated_recursive_sum(u, hashes, alpha).result;
    good += std::fabs(est - sum(u)) <= eps * sum(u);
  }
  out.require(good >= 0.7 * trials, fmt("n=8 alpha=%.4g within 0.2 in %d/%d", alpha, good, trials));
  return out;
}

Outcome end_to_end() {
  const auto g = HadamardFunction::abs_value();
  Outcome out;
  std::uint64_t cell = 0;
  for (std::size_t n : {16u, 64u}) {
    for (double lambda : {0.0, 0.5, 1.0}) {
      ++cell;
      int good = 0;
      const int runs = 100;
      for (int t = 0; t < runs; ++t) {
        const std::uint64_t seed = trial_seed(10, cell, t);
        const auto events = generate(GeneratorSpec{GeneratorMode::kMixture, lambda}, n, 100000,
                                     derive_seed(seed, SeedStream::kGenerator));
        const double truth = exact_distance(histogram(n, events), g);
        RecursiveSumConfig cfg;
        cfg.n = n;
        cfg.eps = 0.2;
        cfg.seed = derive_seed(seed, SeedStream::kSimulation);
        RecursiveSum rs(cfg);
        rs.ingest(events);
        good += std::fabs(rs.estimate().result - truth) <= 0.25 * truth;
      }
      out.require(good >= 0.7 * runs, fmt("n=%zu lambda=%.1f %d/%d", n, lambda, good, runs));
    }
  }
  return out;
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  return sxy / sxx;
}

Outcome space_trend() {
  std::vector<double> log_n;
  std::vector<double> log_log_n;
  std::vector<double> log_bytes;
  std::string sizes;
  for (std::size_t n : {16u, 64u, 256u, 1024u}) {
    RecursiveSumConfig cfg;
    cfg.n = n;
    cfg.eps = 0.2;
    cfg.seed = trial_seed(11, n, 0);
    RecursiveSum rs(cfg);
    rs.ingest(generate(GeneratorSpec::parse("mixture:0.5"), n, 20000, derive_seed(cfg.seed, SeedStream::kGenerator)));
    const double bytes = static_cast<double>(rs.space_bytes());
    log_n.push_back(std::log(static_cast<double>(n)));
    log_log_n.push_back(std::log(std::log2(static_cast<double>(n))));
    log_bytes.push_back(std::log(bytes));
    sizes += fmt("%s%zu:%.1fMB", sizes.empty() ? "" : " ", n, bytes / 1e6);
  }
  const double slope = fitted_slope(log_n, log_bytes);
  Outcome out;
  out.require(slope < 0.5, fmt("exponent in n %.3f, in log n %.2f (%s)", slope,
                               fitted_slope(log_log_n, log_bytes), sizes.c_str()));
  return out;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"oracle exactness", 1, oracle_exactness},
      {"dominant row bound", 10, dominant_row},
      {"split balance", 10, split_balance},
      {"bilinear exactness", 30, bilinear_exactness},
      {"stable sketch accuracy", 120, stable_accuracy},
      {"matrix sketch bracket", 120, matrix_bracket},
      {"key-row cases", 300, key_row_cases},
      {"cover validity", 300, cover_validity},
      {"recursive sum oracle", 120, recursive_sum_oracle},
      {"end-to-end pipeline", 900, end_to_end},
      {"space trend", 1800, space_trend},
  };
  return all;
}

bool run_one(std::size_t id) {
  const Criterion& c = criteria().at(id - 1);
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = c.run();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs <= c.budget_s;
  const bool pass = out.pass && in_time;
  std::printf("criterion %2zu %s  %s: %s (%.1f s of %.0f s%s)\n", id, pass ? "PASS" : "FAIL", c.name,
              out.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::size_t only = 0;
  app.add_option("--criterion", only, "Run one criterion (1-11); all when omitted")
      ->check(CLI::Range(std::size_t{1}, criteria().size()));
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  if (only != 0) {
    ok = run_one(only);
  } else {
    for (std::size_t id = 1; id <= criteria().size(); ++id) ok = run_one(id) && ok;
  }
  return ok ? 0 : 1;
}
