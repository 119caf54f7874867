#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace isk::cli {

struct LevelDiagnostics {
  std::size_t level = 0;
  std::size_t cover_size = 0;
  double abstention_rate = 0.0;
  double y = 0.0;
};

struct RunReport {
  double estimate = 0.0;
  std::optional<double> oracle;
  std::optional<double> relative_error;
  std::string algorithm;
  std::size_t n = 0;
  std::uint64_t m = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::size_t space_bytes = 0;
  double wall_time_ms = 0.0;
  std::string constants_regime;
  std::string g;
  std::string blackbox;
  std::string isa;
  double c_r = 4.0;
  std::vector<LevelDiagnostics> levels;
  std::optional<std::uint64_t> f0;
  std::optional<bool> f0_overflow;

  /// Sets oracle and the matching relative error (absolute error when the
  /// oracle is 0).
  void set_oracle(double value);
  nlohmann::json to_json() const;
};

}  // namespace isk::cli
