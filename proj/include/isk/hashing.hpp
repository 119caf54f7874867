#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace isk {

/// Mersenne prime 2^61 - 1; every hash family here works over Z_p.
inline constexpr std::uint64_t kFieldPrime = (std::uint64_t{1} << 61) - 1;

/// x -> (a*x + b) mod p with (a, b) uniform over Z_p: pairwise independent.
struct LinearForm {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  static LinearForm from_seed(std::uint64_t seed) noexcept;

  std::uint64_t operator()(std::uint64_t x) const noexcept {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * x;
    std::uint64_t r = (static_cast<std::uint64_t>(prod) & kFieldPrime) +
                      static_cast<std::uint64_t>(prod >> 61);
    r = r >= kFieldPrime ? r - kFieldPrime : r;
    r += b;
    return r >= kFieldPrime ? r - kFieldPrime : r;
  }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

class BitHash;

/// Pairwise independent H: [n] -> [tau] = {1..tau}, by floor-scaling a
/// LinearForm value into tau buckets. Bias per bucket is at most tau/p.
class BucketHash {
 public:
  BucketHash(std::uint64_t seed, std::size_t n, std::uint64_t tau);

  /// Bucket of row i (1-based). Throws std::out_of_range outside [1, n].
  std::uint64_t operator()(std::size_t i) const;
  std::uint64_t bucket_unchecked(std::size_t i) const noexcept {
    const std::uint64_t h = form_(i);
    return 1 + static_cast<std::uint64_t>(
                   (static_cast<unsigned __int128>(h) * tau_) / kFieldPrime);
  }

  /// The 0/1 view H_k(i) = [H(i) == k].
  BitHash indicator(std::uint64_t k) const;

  std::size_t size() const noexcept { return n_; }
  std::uint64_t buckets() const noexcept { return tau_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::size_t n_;
  std::uint64_t tau_;
  LinearForm form_;
};

/// A 0/1 function over [n]. Leaves are seeded linear forms reduced by the low
/// bit, bucket indicators, constants, or explicit row selections; composite
/// nodes are entrywise products (HAD). Any node may carry a complement flag.
/// Values are recomputed on demand; instances are immutable and cheap to copy.
class BitHash {
 public:
  /// Seeded pairwise independent hash; n >= 1 (std::domain_error otherwise).
  static BitHash random(std::uint64_t seed, std::size_t n);
  static BitHash constant(std::size_t n, bool value);
  /// Explicit selection: bits[i-1] is the value at row i.
  static BitHash pattern(std::vector<bool> bits);

  /// Value at row i in [1, n]; std::out_of_range otherwise.
  bool operator()(std::size_t i) const;
  bool at(std::size_t i) const noexcept;

  std::vector<bool> evaluate() const;
  /// Rows (1-based) where the function is 1.
  std::vector<std::size_t> support() const;

  std::size_t size() const noexcept { return n_; }
  bool inverted() const noexcept { return inverted_; }
  /// Seed of a leaf hash; 0 for constants, patterns and products.
  std::uint64_t seed() const noexcept;
  /// Constituents of a HAD product (empty for leaves).
  std::span<const BitHash> factors() const noexcept;

  /// Flat byte encoding of the whole expression tree (used by checkpoints).
  void encode(std::vector<std::uint8_t>& out) const;
  static BitHash decode(std::span<const std::uint8_t> in, std::size_t& offset);

  friend BitHash complement(const BitHash& h);
  friend BitHash had(const BitHash& a, const BitHash& b);
  friend class BucketHash;

 private:
  struct Constant {
    bool value;
  };
  struct Linear {
    std::uint64_t seed;
    LinearForm form;
  };
  struct Bucket {
    std::uint64_t seed;
    std::uint64_t tau;
    std::uint64_t k;
    LinearForm form;
  };
  struct Pattern {
    std::shared_ptr<const std::vector<bool>> bits;
  };
  struct Product {
    std::shared_ptr<const std::vector<BitHash>> factors;
  };
  using Node = std::variant<Constant, Linear, Bucket, Pattern, Product>;

  BitHash(std::size_t n, Node node, bool inverted = false)
      : n_(n), node_(std::move(node)), inverted_(inverted) {}

  bool base(std::size_t i) const noexcept;

  std::size_t n_;
  Node node_;
  bool inverted_ = false;
};

/// new_bit_hash(seed, n).
inline BitHash new_bit_hash(std::uint64_t seed, std::size_t n) {
  return BitHash::random(seed, n);
}

/// new_bucket_hash(seed, n, tau); zero n or tau is a std::domain_error.
inline BucketHash new_bucket_hash(std::uint64_t seed, std::size_t n, std::uint64_t tau) {
  return BucketHash(seed, n, tau);
}

/// result(i) = 1 - h(i).
BitHash complement(const BitHash& h);

/// Entrywise product; mismatched domain sizes are a std::domain_error.
BitHash had(const BitHash& a, const BitHash& b);

/// count seeded hashes over [n] drawn from a master seed (child seeds via the
/// splittable generator, one per index).
std::vector<BitHash> derive_bit_hashes(std::uint64_t master, std::size_t n, std::size_t count);

}  // namespace isk
