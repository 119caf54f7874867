#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isk/generators.hpp"
#include "isk/hadamard.hpp"
#include "isk/regime.hpp"

namespace isk {

/// Grid of (n, stream family) cells over which the full-mask matrix sketch is
/// compared with the exact distance.
struct CalibrationGrid {
  std::vector<std::size_t> ns{16, 64};
  std::vector<GeneratorSpec> families{GeneratorSpec::parse("independent"),
                                      GeneratorSpec::parse("perfect-dependence"),
                                      GeneratorSpec::parse("mixture:0.5")};
  std::size_t trials = 100;
  std::size_t m = 10000;
  std::uint64_t seed = 0;
  std::size_t reps = 32;
  double delta2 = 1.0 / 32.0;
};

struct CalibrationFit {
  /// Smallest c_r whose bracket [1/r, r], r = c_r ln n, holds on at least
  /// 1 - delta2 of the usable trials.
  double c_r = 4.0;
  std::size_t trials_used = 0;
  /// Trials skipped because ln n = 0 or the exact distance was 0.
  std::size_t trials_skipped = 0;
  /// False when no trial was usable; c_r then keeps the default.
  bool fitted = false;
};

/// max(ratio, 1/ratio) / ln n for one sketch run, ratio = estimate / exact.
double required_c_r(double estimate, double exact, std::size_t n);

CalibrationFit fit_calibration(const CalibrationGrid& grid);

}  // namespace isk
