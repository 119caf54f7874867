#include "isk/stream.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "isk/errors.hpp"

namespace isk {

void check_event(const StreamEvent& e, std::size_t n) {
  if (e.i < 1 || e.i > n || e.j < 1 || e.j > n) {
    throw InputError("event (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                     ") outside [1, " + std::to_string(n) + "]");
  }
}

ExactHistogram::ExactHistogram(std::size_t n) : n_(n), f_row_(n, 0), f_col_(n, 0) {
  if (n == 0) throw std::domain_error("histogram needs n >= 1");
  if (n > 0xFFFFFFFFULL) throw std::domain_error("histogram supports n < 2^32");
}

void ExactHistogram::ingest(const StreamEvent& e) {
  check_event(e, n_);
  ++m_;
  ++f_row_[e.i - 1];
  ++f_col_[e.j - 1];
  ++f_joint_[key(e.i, e.j)];
}

void ExactHistogram::ingest(std::span<const StreamEvent> events) {
  for (const auto& e : events) ingest(e);
}

std::uint64_t ExactHistogram::f_joint(std::size_t i, std::size_t j) const {
  const auto it = f_joint_.find(key(i, j));
  return it == f_joint_.end() ? 0 : it->second;
}

std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> ExactHistogram::rows() const {
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> out(n_);
  for (const auto& [k, count] : f_joint_) out[(k >> 32) - 1].emplace_back(k & 0xFFFFFFFFULL, count);
  for (auto& r : out) std::sort(r.begin(), r.end());
  return out;
}

ImplicitMatrixView::ImplicitMatrixView(const ExactHistogram& h) : h_(&h) {
  if (h.m() == 0) throw std::domain_error("implicit matrix undefined for an empty stream");
}

double ImplicitMatrixView::cell(std::size_t i, std::size_t j) const {
  const double m = static_cast<double>(h_->m());
  return static_cast<double>(h_->f_joint(i, j)) / m -
         static_cast<double>(h_->f_row(i)) * static_cast<double>(h_->f_col(j)) / (m * m);
}

ExplicitMatrix ImplicitMatrixView::to_explicit() const {
  const std::size_t n = size();
  if (n > kMaxDense) throw std::length_error("dense reconstruction limited to n <= 4096");
  const double m = static_cast<double>(h_->m());
  ExplicitMatrix a(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double fi = static_cast<double>(h_->f_row(i));
    for (std::size_t j = 1; j <= n; ++j) {
      a.at(i, j) = -fi * static_cast<double>(h_->f_col(j)) / (m * m);
    }
  }
  const auto rows = h_->rows();
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& [j, count] : rows[i - 1]) a.at(i, j) = ImplicitMatrixView::cell(i, j);
  }
  return a;
}

WeightVector ImplicitMatrixView::row_weights(const HadamardFunction& g) const {
  const std::size_t n = size();
  const double m = static_cast<double>(h_->m());
  const auto rows = h_->rows();
  WeightVector u(n, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double fi = static_cast<double>(h_->f_row(i));
    const auto& joint = rows[i - 1];
    std::size_t next = 0;
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      double fij = 0.0;
      if (next < joint.size() && joint[next].first == j) fij = static_cast<double>(joint[next++].second);
      s += g(fij / m - fi * static_cast<double>(h_->f_col(j)) / (m * m));
    }
    u[i - 1] = s;
  }
  return u;
}

double exact_distance(const ExactHistogram& h, const HadamardFunction& g) {
  const WeightVector u = ImplicitMatrixView(h).row_weights(g);
  double total = 0.0;
  for (double x : u) total += x;
  return total;
}

double masked_cell_weight(const ImplicitMatrixView& v, const HadamardFunction& g,
                          const BitHash& mask) {
  if (mask.size() != v.size()) throw std::domain_error("mask and matrix sizes differ");
  const WeightVector u = v.row_weights(g);
  double total = 0.0;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    if (mask.at(i)) total += u[i - 1];
  }
  return total;
}

}  // namespace isk
