#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isk/hadamard.hpp"
#include "isk/hashing.hpp"

namespace isk {

/// One pair (i, j) of the stream, both in [1, n].
struct StreamEvent {
  std::uint64_t i = 0;
  std::uint64_t j = 0;

  friend bool operator==(const StreamEvent&, const StreamEvent&) = default;
};

/// Throws InputError when e is outside [1, n]^2.
void check_event(const StreamEvent& e, std::size_t n);

/// Exact frequency state: m, f_i, f_j and sparse f_ij.
class ExactHistogram {
 public:
  explicit ExactHistogram(std::size_t n);

  /// InputError on out-of-range indices; the histogram is left untouched.
  void ingest(const StreamEvent& e);
  void ingest(std::span<const StreamEvent> events);

  std::size_t n() const noexcept { return n_; }
  std::uint64_t m() const noexcept { return m_; }
  std::uint64_t f_row(std::size_t i) const { return f_row_.at(i - 1); }
  std::uint64_t f_col(std::size_t j) const { return f_col_.at(j - 1); }
  std::uint64_t f_joint(std::size_t i, std::size_t j) const;
  std::size_t joint_cells() const noexcept { return f_joint_.size(); }

  /// Nonzero joint cells of each row, sorted by column: result[i-1] = {(j, f_ij)}.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> rows() const;

 private:
  static std::uint64_t key(std::uint64_t i, std::uint64_t j) noexcept { return (i << 32) | j; }

  std::size_t n_;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> f_row_;
  std::vector<std::uint64_t> f_col_;
  std::unordered_map<std::uint64_t, std::uint64_t> f_joint_;
};

/// a_ij = f_ij/m - f_i f_j / m^2 over a histogram (not owned).
class ImplicitMatrixView {
 public:
  /// std::domain_error when m = 0.
  explicit ImplicitMatrixView(const ExactHistogram& h);

  std::size_t size() const noexcept { return h_->n(); }
  double cell(std::size_t i, std::size_t j) const;
  /// Dense reconstruction; std::length_error when n exceeds kMaxDense.
  ExplicitMatrix to_explicit() const;
  /// u_i = sum_j g(a_ij) for every row, one dense sweep.
  WeightVector row_weights(const HadamardFunction& g) const;

  static constexpr std::size_t kMaxDense = 4096;

 private:
  const ExactHistogram* h_;
};

/// sum_{i,j} g(a_ij); std::domain_error when m = 0.
double exact_distance(const ExactHistogram& h, const HadamardFunction& g);
/// sum over rows with mask(i) = 1 of sum_j g(a_ij).
double masked_cell_weight(const ImplicitMatrixView& v, const HadamardFunction& g,
                          const BitHash& mask);

}  // namespace isk
