#include <cmath>
#include <vector>

#include "doctest.h"
#include "isk/generators.hpp"
#include "isk/random.hpp"
#include "isk/recsum.hpp"

using namespace isk;

namespace {

double total(const WeightVector& u) {
  double s = 0.0;
  for (double x : u) s += x;
  return s;
}

// Mean of Y_0 over every assignment of the phi level hashes on [n].
double exhaustive_mean(const WeightVector& u, std::size_t phi, double alpha) {
  const std::size_t n = u.size();
  const std::size_t bits = n * phi;
  double sum = 0.0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    std::vector<BitHash> hashes;
    for (std::size_t j = 0; j < phi; ++j) {
      std::vector<bool> pattern(n);
      for (std::size_t i = 0; i < n; ++i) pattern[i] = (code >> (j * n + i)) & 1U;
      hashes.push_back(BitHash::pattern(pattern));
    }
    sum += simulated_recursive_sum(u, hashes, alpha).result;
  }
  return sum / static_cast<double>(std::uint64_t{1} << bits);
}

}  // namespace

TEST_SUITE("recsum") {

TEST_CASE("recursion depth and level masks") {
  CHECK(recursion_depth(1) == 1);
  CHECK(recursion_depth(2) == 1);
  CHECK(recursion_depth(3) == 2);
  CHECK(recursion_depth(256) == 8);
  CHECK(recursion_depth(257) == 9);
  const auto a = level_hashes(32, 5, 9);
  const auto b = level_hashes(32, 5, 9);
  for (std::size_t j = 0; j < 5; ++j) CHECK(a[j].evaluate() == b[j].evaluate());
  CHECK(level_mask(a, 0).evaluate() == std::vector<bool>(32, true));
  const auto m2 = level_mask(a, 2);
  for (std::size_t i = 1; i <= 32; ++i) CHECK(m2(i) == (a[0](i) && a[1](i)));
  CHECK_THROWS_AS(level_mask(a, 6), std::out_of_range);
}

TEST_CASE("expectation over all mask outcomes equals the total") {
  SplitMix64 g(1);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + g.below(4);
    const std::size_t phi = 1 + g.below(2);
    WeightVector u(n);
    for (auto& x : u) x = g.uniform() < 0.2 ? 0.0 : g.uniform() * 10.0;
    const double alpha = 0.1 + 0.5 * g.uniform();
    CHECK(exhaustive_mean(u, phi, alpha) == doctest::Approx(total(u)).epsilon(1e-12));
  }
}

TEST_CASE("complete covers reproduce the total exactly") {
  SplitMix64 g(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + g.below(30);
    WeightVector u(n);
    for (auto& x : u) x = g.uniform();
    const auto hashes = level_hashes(n, recursion_depth(n), g());
    const auto est = simulated_recursive_sum(u, hashes, 1e-12);
    CHECK(est.result == doctest::Approx(total(u)).epsilon(1e-12));
  }
}

TEST_CASE("level recurrence") {
  // One level, row 1 kept by H_1, row 2 dropped; both in the cover.
  const std::vector<BitHash> hashes{BitHash::pattern({true, false})};
  const std::vector<Cover> covers{Cover({{1, 3.0}, {2, 5.0}})};
  const auto est = combine_levels(3.0, covers, hashes);
  // Y_0 = 2 * 3 + (1 - 2) * 3 + (1 - 0) * 5.
  CHECK(est.y[1] == 3.0);
  CHECK(est.result == 8.0);
  CHECK(est.cover_sizes == std::vector<std::size_t>{2});
}

TEST_CASE("single active row is unbiased") {
  const std::size_t n = 8;
  WeightVector u(n, 0.0);
  u[4] = 2.5;
  double sum = 0.0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    const auto hashes = level_hashes(n, recursion_depth(n), derive_seed(4, SeedStream::kTrial, s));
    sum += simulated_recursive_sum(u, hashes, 0.25).result;
  }
  CHECK(std::fabs(sum / trials - 2.5) <= 0.02 * 2.5);
}

TEST_CASE("exact covers succeed with constant probability") {
  const std::size_t n = 8;
  SplitMix64 g(5);
  int good = 0;
  const int trials = 500;
  for (int s = 0; s < trials; ++s) {
    WeightVector u(n);
    for (auto& x : u) x = g.uniform();
    const auto hashes = level_hashes(n, recursion_depth(n), g());
    const double est = simulated_recursive_sum(u, hashes, 0.04 / 27.0).result;
    good += std::fabs(est - total(u)) <= 0.2 * total(u);
  }
  CHECK(good >= 350);
}

TEST_CASE("base level overflow yields zero") {
  const WeightVector u(16, 1.0);
  const std::vector<BitHash> hashes{BitHash::constant(16, true)};
  const auto est = simulated_recursive_sum(u, hashes, 0.5, 3);
  CHECK(est.f0_overflow);
  CHECK(est.result == 0.0);
}

TEST_CASE("streaming routing follows the nested masks") {
  RecursiveSumConfig cfg;
  cfg.n = 16;
  cfg.seed = 3;
  RecursiveSum rs(cfg);
  const auto& h = rs.hashes();
  std::size_t dropped = 0;
  std::size_t kept = 0;
  for (std::size_t i = 1; i <= 16; ++i) {
    if (!h[0](i)) dropped = i;
    if (level_mask(h, h.size())(i)) kept = i;
  }
  REQUIRE(dropped != 0);
  rs.ingest({dropped, 1});
  CHECK(rs.level_bank(0).admitted_events() == 1);
  for (std::size_t j = 1; j < rs.phi(); ++j) CHECK(rs.level_bank(j).admitted_events() == 0);
  CHECK(rs.survivors() == 0);
  if (kept != 0) {
    rs.ingest({kept, 2});
    for (std::size_t j = 0; j < rs.phi(); ++j) CHECK(rs.level_bank(j).admitted_events() >= 1);
    CHECK(rs.survivors() == 1);
  }
}

TEST_CASE("empty stream estimates zero") {
  RecursiveSumConfig cfg;
  cfg.n = 8;
  const RecursiveSum rs(cfg);
  const auto est = rs.estimate();
  CHECK(est.result == 0.0);
  CHECK(est.y.size() == rs.phi() + 1);
}

TEST_CASE("streaming estimate tracks the exact distance") {
  int good = 0;
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto events = generate(GeneratorSpec::parse("mixture:0.5"), 8, 5000, s);
    ExactHistogram hist(8);
    hist.ingest(events);
    const double truth = exact_distance(hist, HadamardFunction::abs_value());
    RecursiveSumConfig cfg;
    cfg.n = 8;
    cfg.seed = s + 10;
    RecursiveSum rs(cfg);
    rs.ingest(events);
    const auto one = rs.estimate(1);
    const auto many = rs.estimate(3);
    CHECK(one.result == many.result);
    good += std::fabs(one.result - truth) <= 0.25 * truth;
    CHECK(rs.space_bytes() > 0);
  }
  CHECK(good >= 3);
}

TEST_CASE("explicit run with simulated blackboxes") {
  SplitMix64 g(8);
  int good = 0;
  for (int t = 0; t < 10; ++t) {
    ExplicitMatrix a(8);
    for (std::size_t i = 1; i <= 8; ++i) {
      for (std::size_t j = 1; j <= 8; ++j) a.at(i, j) = g.uniform() - 0.5;
    }
    ExplicitRunConfig cfg;
    cfg.seed = g();
    const auto gf = HadamardFunction::abs_power(0.5);
    const double truth = matrix_norm(gf, a);
    const auto est = explicit_recursive_sum(a, gf, cfg);
    good += std::fabs(est.result - truth) <= 0.25 * truth;
  }
  CHECK(good >= 6);
}

}
