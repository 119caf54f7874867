#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "isk/hashing.hpp"

namespace isk {

/// Entrywise function g: even, subadditive, non-negative, g(0) = 0.
class HadamardFunction {
 public:
  enum class Kind { kAbsValue, kAbsPower };

  static HadamardFunction abs_value() { return HadamardFunction(Kind::kAbsValue, 1.0); }
  /// |x|^p with 0 < p <= 1 (std::domain_error otherwise).
  static HadamardFunction abs_power(double p);
  /// "l1" or "lp:<p>".
  static HadamardFunction parse(const std::string& text);

  double operator()(double x) const noexcept;

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return p_; }
  bool is_l1() const noexcept { return kind_ == Kind::kAbsValue; }
  std::string name() const;

 private:
  HadamardFunction(Kind kind, double p) : kind_(kind), p_(p) {}

  Kind kind_;
  double p_;
};

/// Dense n x n matrix, 1-based accessors.
class ExplicitMatrix {
 public:
  explicit ExplicitMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  /// Row-major rows; every row must have rows.size() entries.
  static ExplicitMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double& at(std::size_t i, std::size_t j) noexcept { return data_[(i - 1) * n_ + (j - 1)]; }
  double at(std::size_t i, std::size_t j) const noexcept { return data_[(i - 1) * n_ + (j - 1)]; }
  const double* row(std::size_t i) const noexcept { return data_.data() + (i - 1) * n_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// u[i-1] = sum_j g(a_ij).
using WeightVector = std::vector<double>;

double matrix_norm(const HadamardFunction& g, const ExplicitMatrix& a);
WeightVector row_weights(const HadamardFunction& g, const ExplicitMatrix& a);

/// J I_mask A: column sums over the selected rows.
std::vector<double> aggregate_vector(const ExplicitMatrix& a, const BitHash& mask);
/// sum_j g(sum_{i: mask(i)=1} a_ij).
double aggregate_norm(const HadamardFunction& g, const ExplicitMatrix& a, const BitHash& mask);
/// sum_{i: mask(i)=1} u_i.
double masked_norm(const HadamardFunction& g, const ExplicitMatrix& a, const BitHash& mask);

/// u_i > alpha * sum_k u_k, with i 1-based.
bool is_alpha_heavy(const WeightVector& u, std::size_t i, double alpha);
/// u_i > rho * (sum_k u_k - u_i).
bool is_key_row(const WeightVector& u, std::size_t i, double rho);
/// All alpha-heavy rows, ascending.
std::vector<std::size_t> heavy_rows(const WeightVector& u, double alpha);

/// r(n) = max(2, c_r * ln n).
struct RCalibration {
  double c_r = 4.0;

  double operator()(std::size_t n) const;
};

struct Thresholds {
  double rho;
  double tau_thresh;
};

/// rho = r^4 / eps, tau_thresh = 2048 r^2 / eps.
Thresholds thresholds(std::size_t n, double eps, const std::function<double(std::size_t)>& r_fn);
Thresholds thresholds(std::size_t n, double eps, const RCalibration& r);

}  // namespace isk
