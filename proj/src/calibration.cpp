#include "isk/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "isk/errors.hpp"
#include "isk/random.hpp"
#include "isk/sketches.hpp"

namespace isk {

double required_c_r(double estimate, double exact, std::size_t n) {
  const double ratio = estimate / exact;
  const double spread = ratio >= 1.0 ? ratio : 1.0 / ratio;
  return spread / std::log(static_cast<double>(n));
}

CalibrationFit fit_calibration(const CalibrationGrid& grid) {
  if (grid.trials == 0 || grid.m == 0 || grid.reps == 0) {
    throw ConfigError("calibration needs positive trials, m and repetitions");
  }
  if (!(grid.delta2 > 0.0 && grid.delta2 < 1.0)) throw ConfigError("delta2 must lie in (0, 1)");
  CalibrationFit fit;
  std::vector<double> needed;
  std::uint64_t cell = 0;
  for (std::size_t n : grid.ns) {
    for (const auto& family : grid.families) {
      ++cell;
      for (std::size_t t = 0; t < grid.trials; ++t) {
        const std::uint64_t seed = derive_seed(derive_seed(grid.seed, SeedStream::kTrial, cell),
                                               SeedStream::kTrial, t);
        if (n < 2) {
          ++fit.trials_skipped;
          continue;
        }
        const auto events = generate(family, n, grid.m, derive_seed(seed, SeedStream::kGenerator));
        ExactHistogram h(n);
        h.ingest(events);
        const double exact = exact_distance(h, HadamardFunction::abs_value());
        if (!(exact > 0.0)) {
          ++fit.trials_skipped;
          continue;
        }
        IMMatrixSketch sketch(n, BitHash::constant(n, true), grid.reps,
                              derive_seed(seed, SeedStream::kSimulation));
        sketch.ingest(events);
        const double est = sketch.estimate();
        if (!(est > 0.0)) {
          ++fit.trials_skipped;
          continue;
        }
        needed.push_back(required_c_r(est, exact, n));
      }
    }
  }
  fit.trials_used = needed.size();
  if (needed.empty()) return fit;
  std::sort(needed.begin(), needed.end());
  const double q = 1.0 - grid.delta2;
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(needed.size()))) - 1;
  fit.c_r = needed[std::min(idx, needed.size() - 1)];
  fit.fitted = true;
  return fit;
}

}  // namespace isk
