#include "isk/hashing.hpp"

#include <stdexcept>
#include <string>

#include "isk/errors.hpp"
#include "isk/random.hpp"

namespace isk {

namespace {

std::uint64_t draw_field_element(SplitMix64& gen) noexcept {
  for (;;) {
    const std::uint64_t v = gen() >> 3;  // 61 bits
    if (v < kFieldPrime) return v;
  }
}

void check_row(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) {
    throw std::out_of_range("row " + std::to_string(i) + " outside [1, " + std::to_string(n) +
                            "]");
  }
}

enum class Tag : std::uint8_t { kConstant = 1, kLinear = 2, kBucket = 3, kPattern = 4, kProduct = 5 };

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> in, std::size_t& offset) {
  if (offset + 8 > in.size()) throw InputError("truncated hash encoding");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(in[offset + b]) << (8 * b);
  offset += 8;
  return v;
}

std::uint8_t get_u8(std::span<const std::uint8_t> in, std::size_t& offset) {
  if (offset >= in.size()) throw InputError("truncated hash encoding");
  return in[offset++];
}

}  // namespace

LinearForm LinearForm::from_seed(std::uint64_t seed) noexcept {
  SplitMix64 gen(seed);
  LinearForm f;
  f.a = draw_field_element(gen);
  f.b = draw_field_element(gen);
  return f;
}

BucketHash::BucketHash(std::uint64_t seed, std::size_t n, std::uint64_t tau)
    : seed_(seed), n_(n), tau_(tau), form_(LinearForm::from_seed(seed)) {
  if (n == 0) throw std::domain_error("bucket hash needs n >= 1");
  if (tau == 0) throw std::domain_error("bucket hash needs tau >= 1");
}

std::uint64_t BucketHash::operator()(std::size_t i) const {
  check_row(i, n_);
  return bucket_unchecked(i);
}

BitHash BucketHash::indicator(std::uint64_t k) const {
  if (k < 1 || k > tau_) throw std::out_of_range("bucket index outside [1, tau]");
  return BitHash(n_, BitHash::Bucket{seed_, tau_, k, form_});
}

BitHash BitHash::random(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw std::domain_error("bit hash needs n >= 1");
  return BitHash(n, Linear{seed, LinearForm::from_seed(seed)});
}

BitHash BitHash::constant(std::size_t n, bool value) {
  if (n == 0) throw std::domain_error("bit hash needs n >= 1");
  return BitHash(n, Constant{value});
}

BitHash BitHash::pattern(std::vector<bool> bits) {
  if (bits.empty()) throw std::domain_error("bit hash needs n >= 1");
  const std::size_t n = bits.size();
  return BitHash(n, Pattern{std::make_shared<const std::vector<bool>>(std::move(bits))});
}

bool BitHash::base(std::size_t i) const noexcept {
  struct Visitor {
    std::size_t i;
    bool operator()(const Constant& c) const noexcept { return c.value; }
    bool operator()(const Linear& l) const noexcept { return (l.form(i) & 1U) != 0; }
    bool operator()(const Bucket& b) const noexcept {
      const std::uint64_t h = b.form(i);
      const auto bucket =
          1 + static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * b.tau) / kFieldPrime);
      return bucket == b.k;
    }
    bool operator()(const Pattern& p) const noexcept { return (*p.bits)[i - 1]; }
    bool operator()(const Product& p) const noexcept {
      for (const BitHash& f : *p.factors) {
        if (!f.at(i)) return false;
      }
      return true;
    }
  };
  return std::visit(Visitor{i}, node_);
}

bool BitHash::at(std::size_t i) const noexcept { return base(i) != inverted_; }

bool BitHash::operator()(std::size_t i) const {
  check_row(i, n_);
  return at(i);
}

std::vector<bool> BitHash::evaluate() const {
  std::vector<bool> out(n_);
  for (std::size_t i = 1; i <= n_; ++i) out[i - 1] = at(i);
  return out;
}

std::vector<std::size_t> BitHash::support() const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 1; i <= n_; ++i) {
    if (at(i)) rows.push_back(i);
  }
  return rows;
}

std::uint64_t BitHash::seed() const noexcept {
  if (const auto* l = std::get_if<Linear>(&node_)) return l->seed;
  if (const auto* b = std::get_if<Bucket>(&node_)) return b->seed;
  return 0;
}

std::span<const BitHash> BitHash::factors() const noexcept {
  if (const auto* p = std::get_if<Product>(&node_)) return *p->factors;
  return {};
}

BitHash complement(const BitHash& h) {
  BitHash out = h;
  out.inverted_ = !h.inverted_;
  return out;
}

BitHash had(const BitHash& a, const BitHash& b) {
  if (a.size() != b.size()) {
    throw std::domain_error("HAD of hashes over different domains (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<BitHash> factors;
  // Uncomplemented products are flattened so long HAD chains stay shallow.
  for (const BitHash* h : {&a, &b}) {
    const auto* p = std::get_if<BitHash::Product>(&h->node_);
    if (p != nullptr && !h->inverted_) {
      factors.insert(factors.end(), p->factors->begin(), p->factors->end());
    } else {
      factors.push_back(*h);
    }
  }
  return BitHash(a.size(),
                 BitHash::Product{std::make_shared<const std::vector<BitHash>>(std::move(factors))});
}

std::vector<BitHash> derive_bit_hashes(std::uint64_t master, std::size_t n, std::size_t count) {
  std::vector<BitHash> out;
  out.reserve(count);
  for (std::size_t l = 0; l < count; ++l) {
    out.push_back(BitHash::random(derive_seed(master, SeedStream::kSplitHash, l), n));
  }
  return out;
}

void BitHash::encode(std::vector<std::uint8_t>& out) const {
  struct Visitor {
    std::vector<std::uint8_t>& out;
    void operator()(const Constant& c) const {
      out.push_back(static_cast<std::uint8_t>(Tag::kConstant));
      out.push_back(c.value ? 1 : 0);
    }
    void operator()(const Linear& l) const {
      out.push_back(static_cast<std::uint8_t>(Tag::kLinear));
      put_u64(out, l.seed);
    }
    void operator()(const Bucket& b) const {
      out.push_back(static_cast<std::uint8_t>(Tag::kBucket));
      put_u64(out, b.seed);
      put_u64(out, b.tau);
      put_u64(out, b.k);
    }
    void operator()(const Pattern& p) const {
      out.push_back(static_cast<std::uint8_t>(Tag::kPattern));
      for (std::size_t i = 0; i < p.bits->size(); i += 8) {
        std::uint8_t byte = 0;
        for (std::size_t b = 0; b < 8 && i + b < p.bits->size(); ++b) {
          if ((*p.bits)[i + b]) byte |= static_cast<std::uint8_t>(1U << b);
        }
        out.push_back(byte);
      }
    }
    void operator()(const Product& p) const {
      out.push_back(static_cast<std::uint8_t>(Tag::kProduct));
      put_u64(out, p.factors->size());
      for (const BitHash& f : *p.factors) f.encode(out);
    }
  };
  put_u64(out, n_);
  out.push_back(inverted_ ? 1 : 0);
  std::visit(Visitor{out}, node_);
}

BitHash BitHash::decode(std::span<const std::uint8_t> in, std::size_t& offset) {
  const std::uint64_t n = get_u64(in, offset);
  if (n == 0) throw InputError("hash encoding with empty domain");
  const bool inverted = get_u8(in, offset) != 0;
  const auto tag = static_cast<Tag>(get_u8(in, offset));
  switch (tag) {
    case Tag::kConstant:
      return BitHash(n, Constant{get_u8(in, offset) != 0}, inverted);
    case Tag::kLinear: {
      const std::uint64_t seed = get_u64(in, offset);
      return BitHash(n, Linear{seed, LinearForm::from_seed(seed)}, inverted);
    }
    case Tag::kBucket: {
      const std::uint64_t seed = get_u64(in, offset);
      const std::uint64_t tau = get_u64(in, offset);
      const std::uint64_t k = get_u64(in, offset);
      if (tau == 0 || k < 1 || k > tau) throw InputError("bad bucket indicator encoding");
      return BitHash(n, Bucket{seed, tau, k, LinearForm::from_seed(seed)}, inverted);
    }
    case Tag::kPattern: {
      std::vector<bool> bits(n);
      for (std::size_t i = 0; i < n; i += 8) {
        const std::uint8_t byte = get_u8(in, offset);
        for (std::size_t b = 0; b < 8 && i + b < n; ++b) bits[i + b] = ((byte >> b) & 1U) != 0;
      }
      return BitHash(n, Pattern{std::make_shared<const std::vector<bool>>(std::move(bits))},
                     inverted);
    }
    case Tag::kProduct: {
      const std::uint64_t count = get_u64(in, offset);
      if (count > in.size()) throw InputError("bad product encoding");
      std::vector<BitHash> factors;
      factors.reserve(count);
      for (std::uint64_t f = 0; f < count; ++f) {
        factors.push_back(decode(in, offset));
        if (factors.back().size() != n) throw InputError("product factor domain mismatch");
      }
      return BitHash(n, Product{std::make_shared<const std::vector<BitHash>>(std::move(factors))},
                     inverted);
    }
  }
  throw InputError("unknown hash node tag");
}

}  // namespace isk
