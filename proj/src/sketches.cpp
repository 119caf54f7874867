#include "isk/sketches.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "byte_io.hpp"
#include "isk/errors.hpp"
#include "isk/kernels.hpp"
#include "isk/random.hpp"

namespace isk {

namespace {

constexpr std::uint32_t kMagic = 0x534B5349;  // "ISKS"
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kKindStable = 1;
constexpr std::uint32_t kKindMatrix = 2;
constexpr std::uint64_t kMaxReps = std::uint64_t{1} << 24;

std::vector<std::uint8_t> mask_bytes(const BitHash& mask) {
  std::vector<std::uint8_t> out;
  mask.encode(out);
  return out;
}

void check_reps(std::size_t reps) {
  if (reps == 0) throw ConfigError("repetition count must be >= 1");
  if (reps > kMaxReps) throw ConfigError("repetition count too large");
}

void check_mask(std::size_t n, const BitHash& mask) {
  if (n == 0) throw ConfigError("sketch needs n >= 1");
  if (mask.size() != n) throw std::domain_error("mask size differs from n");
}

void write_header(detail::ByteWriter& w, std::uint32_t kind, std::size_t n, std::size_t reps,
                  std::uint64_t seed, double truncation, std::uint64_t m_seen,
                  const BitHash& mask) {
  w.u32(kMagic);
  w.u32(kVersion);
  w.u32(kind);
  w.u64(n);
  w.u64(reps);
  w.u64(seed);
  w.f64(truncation);
  w.u64(m_seen);
  const auto bytes = mask_bytes(mask);
  w.u64(bytes.size());
  w.raw(bytes);
}

struct Header {
  std::size_t n;
  std::size_t reps;
  std::uint64_t seed;
  double truncation;
  std::uint64_t m_seen;
  BitHash mask;
};

Header read_header(detail::ByteReader& r, std::uint32_t expected_kind) {
  if (r.u32() != kMagic) throw InputError("not a sketch checkpoint (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kVersion) {
    throw InputError("unsupported checkpoint version " + std::to_string(version));
  }
  if (r.u32() != expected_kind) throw InputError("checkpoint holds a different sketch kind");
  const std::uint64_t n = r.u64();
  const std::uint64_t reps = r.u64();
  const std::uint64_t seed = r.u64();
  const double truncation = r.f64();
  const std::uint64_t m_seen = r.u64();
  const std::uint64_t mask_len = r.u64();
  if (n == 0 || reps == 0 || reps > kMaxReps) throw InputError("checkpoint header out of range");
  if (!(truncation > 0.0)) throw InputError("checkpoint truncation must be positive");
  if (mask_len > r.data().size() - r.position()) throw InputError("checkpoint truncated");
  const auto mask_span = r.data().subspan(r.position(), mask_len);
  std::size_t offset = 0;
  BitHash mask = BitHash::decode(mask_span, offset);
  if (offset != mask_len) throw InputError("trailing bytes in checkpoint mask");
  if (mask.size() != n) throw InputError("checkpoint mask size differs from n");
  r.position() += mask_len;
  return Header{n, reps, seed, truncation, m_seen, std::move(mask)};
}

}  // namespace

std::size_t stable_rep_floor(double eps_prime, double delta1, double c1) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0)) throw ConfigError("eps' must lie in (0, 1)");
  if (!(delta1 > 0.0 && delta1 < 1.0)) throw ConfigError("delta1 must lie in (0, 1)");
  if (!(c1 > 0.0)) throw ConfigError("c1 must be positive");
  return static_cast<std::size_t>(std::ceil(c1 / (eps_prime * eps_prime) * std::log(1.0 / delta1)));
}

std::size_t matrix_rep_floor(double delta2, double c2) {
  if (!(delta2 > 0.0 && delta2 < 1.0)) throw ConfigError("delta2 must lie in (0, 1)");
  if (!(c2 > 0.0)) throw ConfigError("c2 must be positive");
  return static_cast<std::size_t>(std::ceil(c2 * std::log(1.0 / delta2)));
}

void require_reps(std::size_t reps, std::size_t floor, const char* what) {
  if (reps < floor) {
    throw ConfigError(std::string(what) + ": " + std::to_string(reps) +
                      " repetitions is below the floor of " + std::to_string(floor));
  }
}

double median_inplace(std::span<double> values) {
  if (values.empty()) throw std::domain_error("median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

std::uint64_t matrix_row_seed(std::uint64_t seed) noexcept {
  return derive_seed(seed, SeedStream::kRowCoefficients);
}

std::uint64_t matrix_column_seed(std::uint64_t seed) noexcept {
  return derive_seed(seed, SeedStream::kColumnCoefficients);
}

// ---- StableL1VectorSketch ----

StableL1VectorSketch::StableL1VectorSketch(std::size_t n, BitHash mask, std::size_t reps,
                                           std::uint64_t seed, double truncation)
    : n_(n),
      mask_(std::move(mask)),
      seed_(seed),
      truncation_(truncation),
      a1_(reps, 0.0),
      a2_(reps, 0.0),
      scratch_(reps, 0.0) {
  check_reps(reps);
  check_mask(n, mask_);
  if (!(truncation > 0.0)) throw ConfigError("truncation must be positive");
}

void StableL1VectorSketch::ingest(const StreamEvent& e) {
  check_event(e, n_);
  const auto& k = kernels::active();
  k.fill_cauchy(kernels::make_cauchy_key(seed_, e.j, reps()), truncation_, scratch_.data(), reps());
  k.add(a2_.data(), scratch_.data(), reps());
  if (mask_.at(e.i)) {
    k.add(a1_.data(), scratch_.data(), reps());
    ++f_s_;
  }
  ++m_seen_;
}

void StableL1VectorSketch::ingest(std::span<const StreamEvent> events) {
  for (const auto& e : events) ingest(e);
}

std::vector<double> StableL1VectorSketch::rep_values() const {
  if (m_seen_ == 0) throw std::domain_error("estimate undefined before the first event");
  const double m = static_cast<double>(m_seen_);
  std::vector<double> out(reps());
  for (std::size_t t = 0; t < reps(); ++t) {
    out[t] = a1_[t] / m - static_cast<double>(f_s_) * a2_[t] / (m * m);
  }
  return out;
}

double StableL1VectorSketch::estimate() const {
  if (m_seen_ == 0) throw std::domain_error("estimate undefined before the first event");
  const double m = static_cast<double>(m_seen_);
  std::vector<double> v(reps());
  kernels::active().aggregate_residual(a1_.data(), a2_.data(), 1.0 / m,
                                       static_cast<double>(f_s_) / (m * m), v.data(), reps());
  return median_inplace(v);
}

std::vector<double> StableL1VectorSketch::coefficients(std::size_t j) const {
  if (j < 1 || j > n_) throw std::out_of_range("column outside [1, n]");
  std::vector<double> out(reps());
  kernels::active().fill_cauchy(kernels::make_cauchy_key(seed_, j, reps()), truncation_,
                                out.data(), reps());
  return out;
}

void StableL1VectorSketch::merge(const StableL1VectorSketch& other) {
  if (other.n_ != n_ || other.reps() != reps() || other.seed_ != seed_ ||
      other.truncation_ != truncation_ || mask_bytes(other.mask_) != mask_bytes(mask_)) {
    throw ConfigError("cannot merge stable sketches with different parameters");
  }
  for (std::size_t t = 0; t < reps(); ++t) {
    a1_[t] += other.a1_[t];
    a2_[t] += other.a2_[t];
  }
  f_s_ += other.f_s_;
  m_seen_ += other.m_seen_;
}

std::size_t StableL1VectorSketch::space_bytes() const {
  return (a1_.size() + a2_.size()) * sizeof(double) + 2 * sizeof(std::uint64_t) +
         mask_bytes(mask_).size();
}

void StableL1VectorSketch::serialize(std::vector<std::uint8_t>& out) const {
  detail::ByteWriter w(out);
  write_header(w, kKindStable, n_, reps(), seed_, truncation_, m_seen_, mask_);
  w.u64(f_s_);
  w.f64s(a1_);
  w.f64s(a2_);
}

StableL1VectorSketch StableL1VectorSketch::deserialize(std::span<const std::uint8_t> in) {
  detail::ByteReader r(in);
  Header h = read_header(r, kKindStable);
  StableL1VectorSketch s(h.n, std::move(h.mask), h.reps, h.seed, h.truncation);
  s.m_seen_ = h.m_seen;
  s.f_s_ = r.u64();
  r.f64s(s.a1_);
  r.f64s(s.a2_);
  if (!r.done()) throw InputError("trailing bytes in checkpoint");
  if (s.f_s_ > s.m_seen_) throw InputError("checkpoint counters inconsistent");
  return s;
}

// ---- IMMatrixSketch ----

IMMatrixSketch::IMMatrixSketch(std::size_t n, BitHash mask, std::size_t reps,
                               std::uint64_t row_seed, std::uint64_t column_seed,
                               double truncation)
    : n_(n),
      mask_(std::move(mask)),
      row_seed_(row_seed),
      column_seed_(column_seed),
      truncation_(truncation),
      b1_(reps, 0.0),
      b2_(reps, 0.0),
      b3_(reps, 0.0),
      x_(reps, 0.0),
      y_(reps, 0.0) {
  check_reps(reps);
  check_mask(n, mask_);
  if (!(truncation > 0.0)) throw ConfigError("truncation must be positive");
}

IMMatrixSketch::IMMatrixSketch(std::size_t n, BitHash mask, std::size_t reps, std::uint64_t seed,
                               double truncation)
    : IMMatrixSketch(n, std::move(mask), reps, matrix_row_seed(seed), matrix_column_seed(seed),
                     truncation) {}

void IMMatrixSketch::ingest(const StreamEvent& e) {
  check_event(e, n_);
  const auto& k = kernels::active();
  const std::size_t reps = b1_.size();
  k.fill_cauchy(kernels::make_cauchy_key(column_seed_, e.j, reps), truncation_, y_.data(), reps);
  k.add(b3_.data(), y_.data(), reps);
  if (mask_.at(e.i)) {
    k.fill_cauchy(kernels::make_cauchy_key(row_seed_, e.i, reps), truncation_, x_.data(), reps);
    k.add_product(b1_.data(), x_.data(), y_.data(), reps);
    k.add(b2_.data(), x_.data(), reps);
  }
  ++m_seen_;
}

void IMMatrixSketch::ingest(std::span<const StreamEvent> events) {
  for (const auto& e : events) ingest(e);
}

std::vector<double> IMMatrixSketch::rep_values() const {
  if (m_seen_ == 0) throw std::domain_error("estimate undefined before the first event");
  const double m = static_cast<double>(m_seen_);
  std::vector<double> out(reps());
  for (std::size_t t = 0; t < reps(); ++t) out[t] = b1_[t] / m - b2_[t] * b3_[t] / (m * m);
  return out;
}

double IMMatrixSketch::estimate() const {
  if (m_seen_ == 0) throw std::domain_error("estimate undefined before the first event");
  const double m = static_cast<double>(m_seen_);
  std::vector<double> v(reps());
  kernels::active().bilinear_residual(b1_.data(), b2_.data(), b3_.data(), 1.0 / m, 1.0 / (m * m),
                                      v.data(), reps());
  return median_inplace(v);
}

std::vector<double> IMMatrixSketch::row_coefficients(std::size_t i) const {
  if (i < 1 || i > n_) throw std::out_of_range("row outside [1, n]");
  std::vector<double> out(reps());
  kernels::active().fill_cauchy(kernels::make_cauchy_key(row_seed_, i, reps()), truncation_,
                                out.data(), reps());
  return out;
}

std::vector<double> IMMatrixSketch::column_coefficients(std::size_t j) const {
  if (j < 1 || j > n_) throw std::out_of_range("column outside [1, n]");
  std::vector<double> out(reps());
  kernels::active().fill_cauchy(kernels::make_cauchy_key(column_seed_, j, reps()), truncation_,
                                out.data(), reps());
  return out;
}

void IMMatrixSketch::merge(const IMMatrixSketch& other) {
  if (other.n_ != n_ || other.reps() != reps() || other.row_seed_ != row_seed_ ||
      other.column_seed_ != column_seed_ || other.truncation_ != truncation_ ||
      mask_bytes(other.mask_) != mask_bytes(mask_)) {
    throw ConfigError("cannot merge matrix sketches with different parameters");
  }
  for (std::size_t t = 0; t < reps(); ++t) {
    b1_[t] += other.b1_[t];
    b2_[t] += other.b2_[t];
    b3_[t] += other.b3_[t];
  }
  m_seen_ += other.m_seen_;
}

std::size_t IMMatrixSketch::space_bytes() const {
  return (b1_.size() + b2_.size() + b3_.size()) * sizeof(double) + sizeof(std::uint64_t) +
         mask_bytes(mask_).size();
}

void IMMatrixSketch::serialize(std::vector<std::uint8_t>& out) const {
  detail::ByteWriter w(out);
  write_header(w, kKindMatrix, n_, reps(), row_seed_, truncation_, m_seen_, mask_);
  w.u64(column_seed_);
  w.f64s(b1_);
  w.f64s(b2_);
  w.f64s(b3_);
}

IMMatrixSketch IMMatrixSketch::deserialize(std::span<const std::uint8_t> in) {
  detail::ByteReader r(in);
  Header h = read_header(r, kKindMatrix);
  const std::uint64_t column_seed = r.u64();
  IMMatrixSketch s(h.n, std::move(h.mask), h.reps, h.seed, column_seed, h.truncation);
  s.m_seen_ = h.m_seen;
  r.f64s(s.b1_);
  r.f64s(s.b2_);
  r.f64s(s.b3_);
  if (!r.done()) throw InputError("trailing bytes in checkpoint");
  return s;
}

}  // namespace isk
