#include <cmath>
#include <vector>

#include "doctest.h"
#include "isk/errors.hpp"
#include "isk/generators.hpp"
#include "isk/random.hpp"
#include "isk/stream.hpp"

using namespace isk;

namespace {

ExactHistogram histogram(std::size_t n, const std::vector<StreamEvent>& events) {
  ExactHistogram h(n);
  h.ingest(events);
  return h;
}

// sum_ij g(f_ij/m - f_i f_j/m^2) straight from the definition.
double brute_distance(std::size_t n, const std::vector<StreamEvent>& events, const HadamardFunction& g) {
  std::vector<double> fij(n * n, 0.0), fi(n, 0.0), fj(n, 0.0);
  for (const auto& e : events) {
    fij[(e.i - 1) * n + (e.j - 1)] += 1.0;
    fi[e.i - 1] += 1.0;
    fj[e.j - 1] += 1.0;
  }
  const double m = static_cast<double>(events.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) total += g(fij[i * n + j] / m - fi[i] * fj[j] / (m * m));
  }
  return total;
}

}  // namespace

TEST_SUITE("stream") {

TEST_CASE("ingest updates every counter") {
  ExactHistogram h(3);
  h.ingest({1, 1});
  CHECK(h.m() == 1);
  CHECK(h.f_row(1) == 1);
  CHECK(h.f_row(2) == 0);
  CHECK(h.f_joint(1, 1) == 1);
  h.ingest({2, 3});
  h.ingest({2, 3});
  CHECK(h.f_joint(2, 3) == 2);
  CHECK(h.f_col(3) == 2);
  CHECK(h.m() == 3);
}

TEST_CASE("out-of-range events are rejected without side effects") {
  ExactHistogram h(2);
  CHECK_THROWS_AS(h.ingest({0, 1}), InputError);
  CHECK_THROWS_AS(h.ingest({1, 3}), InputError);
  CHECK(h.m() == 0);
  CHECK(h.joint_cells() == 0);
}

TEST_CASE("exact distance on hand-checkable streams") {
  const auto g = HadamardFunction::abs_value();
  CHECK(std::fabs(exact_distance(histogram(2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}), g)) < 1e-12);
  CHECK(std::fabs(exact_distance(histogram(2, {{1, 1}, {2, 2}}), g) - 1.0) < 1e-12);
  CHECK(exact_distance(histogram(2, std::vector<StreamEvent>(7, {1, 1})), g) == 0.0);
  CHECK_THROWS_AS(exact_distance(ExactHistogram(2), g), std::domain_error);
}

TEST_CASE("exact distance matches a brute-force sum") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 1 + seed % 9;
    const auto events = generate(GeneratorSpec::parse("mixture:0.4"), n, 50 + seed * 7, seed);
    for (const auto& g : {HadamardFunction::abs_value(), HadamardFunction::abs_power(0.5)}) {
      const double want = brute_distance(n, events, g);
      CHECK(exact_distance(histogram(n, events), g) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("implicit matrix rows and columns sum to zero") {
  const auto events = generate(GeneratorSpec::parse("mixture:0.5"), 6, 300, 3);
  const auto h = histogram(6, events);
  const ExplicitMatrix a = ImplicitMatrixView(h).to_explicit();
  for (std::size_t i = 1; i <= 6; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 1; j <= 6; ++j) {
      row += a.at(i, j);
      col += a.at(j, i);
    }
    CHECK(std::fabs(row) < 1e-15);
    CHECK(std::fabs(col) < 1e-15);
  }
}

TEST_CASE("masked cell weight") {
  const auto g = HadamardFunction::abs_value();
  const std::vector<StreamEvent> events{{1, 1}, {2, 2}};
  const auto h = histogram(2, events);
  const ImplicitMatrixView v(h);
  CHECK(masked_cell_weight(v, g, BitHash::constant(2, false)) == 0.0);
  CHECK(masked_cell_weight(v, g, BitHash::constant(2, true)) == doctest::Approx(exact_distance(h, g)));
  // Each row holds |1/2 - 1/4| + |0 - 1/4|.
  for (bool b1 : {false, true}) {
    for (bool b2 : {false, true}) {
      const double want = 0.5 * (b1 + b2);
      CHECK(masked_cell_weight(v, g, BitHash::pattern({b1, b2})) == doctest::Approx(want));
    }
  }
}

TEST_CASE("dense reconstruction limit") {
  ExactHistogram h(5000);
  h.ingest({1, 1});
  CHECK_THROWS_AS(ImplicitMatrixView(h).to_explicit(), std::length_error);
  CHECK(ImplicitMatrixView(h).row_weights(HadamardFunction::abs_value()).size() == 5000);
}

TEST_CASE("generator modes") {
  for (const auto& e : generate(GeneratorSpec::parse("perfect-dependence"), 4, 100, 1)) {
    CHECK(e.i == e.j);
    CHECK(e.i >= 1);
    CHECK(e.i <= 4);
  }
  CHECK(generate(GeneratorSpec::parse("mixture:0"), 16, 500, 9) ==
        generate(GeneratorSpec::parse("independent"), 16, 500, 9));
  CHECK(generate(GeneratorSpec::parse("mixture:1"), 16, 500, 9) ==
        generate(GeneratorSpec::parse("perfect-dependence"), 16, 500, 9));
  CHECK(generate(GeneratorSpec::parse("independent"), 16, 100, 4) ==
        generate(GeneratorSpec::parse("independent"), 16, 100, 4));
  CHECK_THROWS_AS(GeneratorSpec::parse("mixture:1.5"), std::domain_error);
  CHECK_THROWS_AS(GeneratorSpec::parse("zipf"), std::domain_error);
  CHECK_THROWS_AS(generate(GeneratorSpec::parse("independent"), 4, 0, 1), std::domain_error);
  CHECK(GeneratorSpec::parse("mixture:0.25").name() == "mixture:0.25");
}

TEST_CASE("planted rows dominate their own cells") {
  const StreamGenerator gen(GeneratorSpec::parse("planted-rows"), 16, 5);
  const auto rows = gen.planted();
  CHECK(rows[0] != rows[1]);
  CHECK(rows[1] != rows[2]);
  CHECK(rows[0] != rows[2]);
  const auto h = histogram(16, generate(GeneratorSpec::parse("planted-rows"), 16, 20000, 5));
  CHECK(h.f_joint(rows[0], rows[0]) > h.f_joint(rows[1], rows[1]));
  CHECK(h.f_joint(rows[1], rows[1]) > h.f_joint(rows[2], rows[2]));
}

TEST_CASE("independent streams converge to the product distribution") {
  int small = 0;
  const int trials = 20;
  for (int s = 0; s < trials; ++s) {
    const auto h = histogram(16, generate(GeneratorSpec::parse("independent"), 16, 1000000, 100 + s));
    small += exact_distance(h, HadamardFunction::abs_value()) <= 0.05;
  }
  CHECK(static_cast<double>(small) / trials >= 0.95);
}

}
