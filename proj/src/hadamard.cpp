#include "isk/hadamard.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isk {

namespace {

void check_mask(const ExplicitMatrix& a, const BitHash& mask) {
  if (mask.size() != a.size()) throw std::domain_error("mask and matrix sizes differ");
}

void check_index(const WeightVector& u, std::size_t i) {
  if (i < 1 || i > u.size()) throw std::out_of_range("row index outside the weight vector");
}

}  // namespace

HadamardFunction HadamardFunction::abs_power(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("|x|^p needs 0 < p <= 1");
  if (p == 1.0) return abs_value();
  return HadamardFunction(Kind::kAbsPower, p);
}

HadamardFunction HadamardFunction::parse(const std::string& text) {
  if (text == "l1") return abs_value();
  if (text.rfind("lp:", 0) == 0) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(text.substr(3), &used);
    } catch (const std::exception&) {
      throw std::domain_error("bad exponent in '" + text + "'");
    }
    if (used != text.size() - 3) throw std::domain_error("bad exponent in '" + text + "'");
    return abs_power(p);
  }
  throw std::domain_error("unknown g '" + text + "' (expected l1 or lp:<p>)");
}

double HadamardFunction::operator()(double x) const noexcept {
  const double ax = std::fabs(x);
  return kind_ == Kind::kAbsValue ? ax : std::pow(ax, p_);
}

std::string HadamardFunction::name() const {
  if (kind_ == Kind::kAbsValue) return "l1";
  std::string p = std::to_string(p_);
  while (p.size() > 1 && p.back() == '0') p.pop_back();
  if (p.back() == '.') p.pop_back();
  return "lp:" + p;
}

ExplicitMatrix ExplicitMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  ExplicitMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::domain_error("matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i + 1, j + 1) = rows[i][j];
  }
  return m;
}

double matrix_norm(const HadamardFunction& g, const ExplicitMatrix& a) {
  double total = 0.0;
  for (double u : row_weights(g, a)) total += u;
  return total;
}

WeightVector row_weights(const HadamardFunction& g, const ExplicitMatrix& a) {
  const std::size_t n = a.size();
  WeightVector u(n, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double* r = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += g(r[j]);
    u[i - 1] = s;
  }
  return u;
}

std::vector<double> aggregate_vector(const ExplicitMatrix& a, const BitHash& mask) {
  check_mask(a, mask);
  const std::size_t n = a.size();
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    if (!mask.at(i)) continue;
    const double* r = a.row(i);
    for (std::size_t j = 0; j < n; ++j) v[j] += r[j];
  }
  return v;
}

double aggregate_norm(const HadamardFunction& g, const ExplicitMatrix& a, const BitHash& mask) {
  double total = 0.0;
  for (double x : aggregate_vector(a, mask)) total += g(x);
  return total;
}

double masked_norm(const HadamardFunction& g, const ExplicitMatrix& a, const BitHash& mask) {
  check_mask(a, mask);
  const WeightVector u = row_weights(g, a);
  double total = 0.0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    if (mask.at(i)) total += u[i - 1];
  }
  return total;
}

bool is_alpha_heavy(const WeightVector& u, std::size_t i, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  check_index(u, i);
  double total = 0.0;
  for (double x : u) total += x;
  return u[i - 1] > alpha * total;
}

bool is_key_row(const WeightVector& u, std::size_t i, double rho) {
  if (!(rho >= 1.0)) throw std::domain_error("rho must be >= 1");
  check_index(u, i);
  double rest = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k != i - 1) rest += u[k];
  }
  return u[i - 1] > rho * rest;
}

std::vector<std::size_t> heavy_rows(const WeightVector& u, double alpha) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    if (is_alpha_heavy(u, i, alpha)) out.push_back(i);
  }
  return out;
}

double RCalibration::operator()(std::size_t n) const {
  const double scaled = c_r * std::log(static_cast<double>(n));
  return scaled > 2.0 ? scaled : 2.0;
}

Thresholds thresholds(std::size_t n, double eps, const std::function<double(std::size_t)>& r_fn) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("eps must lie in (0, 1]");
  const double r = r_fn(n);
  if (!(r >= 1.0)) throw std::domain_error("r(n) must be >= 1");
  const double r2 = r * r;
  return Thresholds{r2 * r2 / eps, 2048.0 * r2 / eps};
}

Thresholds thresholds(std::size_t n, double eps, const RCalibration& r) {
  return thresholds(n, eps, [&r](std::size_t k) { return r(k); });
}

}  // namespace isk
