#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isk/stream.hpp"

namespace isk {

enum class GeneratorMode { kIndependent, kPerfectDependence, kMixture, kPlantedRows };

struct GeneratorSpec {
  GeneratorMode mode = GeneratorMode::kIndependent;
  /// Dependence probability for kMixture.
  double lambda = 0.0;
  /// Fraction of events placed on the planted rows for kPlantedRows.
  double planted_mass = 0.5;

  /// "independent", "perfect-dependence", "mixture:<lambda>", "planted-rows".
  static GeneratorSpec parse(const std::string& text);
  std::string name() const;
};

/// Stateless generator: the event at a position depends only on (spec, n,
/// seed, position). Every mode draws from the same per-position generator, so
/// mixture(0) reproduces independent sampling exactly and mixture(1) matches
/// perfect dependence.
class StreamGenerator {
 public:
  /// std::domain_error for n = 0, lambda outside [0, 1], or planted_rows with n < 3.
  StreamGenerator(GeneratorSpec spec, std::size_t n, std::uint64_t seed);

  StreamEvent at(std::uint64_t position) const noexcept;

  /// Planted rows (distinct, seeded) with relative weights 5:3:2.
  const std::array<std::uint64_t, 3>& planted() const noexcept { return planted_; }
  std::size_t n() const noexcept { return n_; }

 private:
  GeneratorSpec spec_;
  std::size_t n_;
  std::uint64_t seed_;
  std::array<std::uint64_t, 3> planted_{};
};

/// Events 0..m-1 of StreamGenerator; m = 0 is a std::domain_error.
std::vector<StreamEvent> generate(const GeneratorSpec& spec, std::size_t n, std::size_t m,
                                  std::uint64_t seed);

}  // namespace isk
