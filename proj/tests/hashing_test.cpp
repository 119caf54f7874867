#include <cmath>
#include <set>

#include "doctest.h"
#include "isk/errors.hpp"
#include "isk/hashing.hpp"
#include "isk/random.hpp"

using namespace isk;

TEST_SUITE("hashing") {

TEST_CASE("bit hash values are 0/1 and deterministic") {
  const BitHash h = new_bit_hash(7, 16);
  const auto first = h.evaluate();
  const auto second = new_bit_hash(7, 16).evaluate();
  CHECK(first.size() == 16);
  CHECK(first == second);
  for (std::size_t i = 1; i <= 16; ++i) CHECK(h(i) == first[i - 1]);
}

TEST_CASE("bit hash domain errors") {
  CHECK_THROWS_AS(BitHash::random(1, 0), std::domain_error);
  const BitHash h = BitHash::random(1, 4);
  CHECK_THROWS_AS(h(0), std::out_of_range);
  CHECK_THROWS_AS(h(5), std::out_of_range);
}

TEST_CASE("bit hash is pairwise independent across seeds") {
  int both = 0;
  int first = 0;
  const int trials = 100000;
  for (int s = 0; s < trials; ++s) {
    const BitHash h = BitHash::random(splitmix64(static_cast<std::uint64_t>(s)), 8);
    both += h.at(2) && h.at(5);
    first += h.at(2);
  }
  CHECK(std::abs(static_cast<double>(both) / trials - 0.25) < 0.01);
  CHECK(std::abs(static_cast<double>(first) / trials - 0.5) < 0.01);
}

TEST_CASE("complement") {
  const BitHash h = BitHash::random(11, 32);
  const BitHash c = complement(h);
  const BitHash cc = complement(c);
  for (std::size_t i = 1; i <= 32; ++i) {
    CHECK(h(i) + c(i) == 1);
    CHECK(cc(i) == h(i));
  }
  const BitHash p = BitHash::pattern({false, false, true});
  CHECK(p(3));
  CHECK_FALSE(complement(p)(3));
}

TEST_CASE("had") {
  const BitHash h = BitHash::random(3, 20);
  const BitHash hh = had(h, h);
  const BitHash hc = had(h, complement(h));
  for (std::size_t i = 1; i <= 20; ++i) {
    CHECK(hh(i) == h(i));
    CHECK_FALSE(hc(i));
  }
  const BitHash a = BitHash::pattern({true, false, true, false});
  const BitHash b = BitHash::pattern({true, true, false, false});
  CHECK(had(a, b).evaluate() == std::vector<bool>{true, false, false, false});
  CHECK_THROWS_AS(had(a, BitHash::constant(5, true)), std::domain_error);
}

TEST_CASE("bucket hash with one bucket") {
  const BucketHash h = new_bucket_hash(5, 10, 1);
  for (std::size_t i = 1; i <= 10; ++i) CHECK(h(i) == 1);
}

TEST_CASE("bucket hash errors") {
  CHECK_THROWS_AS(new_bucket_hash(1, 0, 4), std::domain_error);
  CHECK_THROWS_AS(new_bucket_hash(1, 4, 0), std::domain_error);
  CHECK_THROWS_AS(new_bucket_hash(1, 4, 4).indicator(5), std::out_of_range);
}

TEST_CASE("bucket indicators partition the domain") {
  const BucketHash h = new_bucket_hash(99, 50, 7);
  std::vector<BitHash> ind;
  for (std::uint64_t k = 1; k <= 7; ++k) ind.push_back(h.indicator(k));
  for (std::size_t i = 1; i <= 50; ++i) {
    int total = 0;
    for (std::uint64_t k = 1; k <= 7; ++k) {
      total += ind[k - 1](i);
      CHECK(ind[k - 1](i) == (h(i) == k));
    }
    CHECK(total == 1);
  }
}

TEST_CASE("bucket hash is pairwise independent across seeds") {
  int hits = 0;
  const int trials = 100000;
  for (int s = 0; s < trials; ++s) {
    const BucketHash h(splitmix64(static_cast<std::uint64_t>(s) + 17), 64, 8);
    hits += h(1) == 3 && h(2) == 5;
  }
  CHECK(std::abs(static_cast<double>(hits) / trials - 1.0 / 64.0) < 0.003);
}

TEST_CASE("derived hashes are distinct and reproducible") {
  const auto a = derive_bit_hashes(42, 64, 8);
  const auto b = derive_bit_hashes(42, 64, 8);
  REQUIRE(a.size() == 8);
  std::set<std::vector<bool>> patterns;
  for (std::size_t l = 0; l < 8; ++l) {
    CHECK(a[l].evaluate() == b[l].evaluate());
    patterns.insert(a[l].evaluate());
  }
  CHECK(patterns.size() == 8);
}

TEST_CASE("encode and decode round trip") {
  const BucketHash buckets(8, 30, 5);
  const BitHash expr = had(complement(BitHash::random(4, 30)), had(buckets.indicator(2), BitHash::constant(30, true)));
  std::vector<std::uint8_t> bytes;
  expr.encode(bytes);
  std::size_t offset = 0;
  const BitHash back = BitHash::decode(bytes, offset);
  CHECK(offset == bytes.size());
  CHECK(back.evaluate() == expr.evaluate());
  bytes.pop_back();
  offset = 0;
  CHECK_THROWS_AS(BitHash::decode(bytes, offset), InputError);
}

}
