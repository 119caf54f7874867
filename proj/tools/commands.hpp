#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isk::cli {

inline constexpr const char* kDefaultCalibrationPath = "implicit-sketch-calibration.json";
inline constexpr const char* kSeedEnv = "IMPLICIT_SKETCH_SEED";

/// Flag value, else IMPLICIT_SKETCH_SEED, else 0. ConfigError on a malformed variable.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag);

struct GenerateOptions {
  std::string mode = "independent";
  std::size_t n = 16;
  std::size_t m = 1000;
  std::optional<std::uint64_t> seed;
  double planted_mass = 0.5;
  std::string output = "-";
  bool header = true;
};
void cmd_generate(const GenerateOptions& opt);

struct EstimateOptions {
  std::string input;
  std::optional<std::size_t> n;
  std::string algorithm = "pipeline";
  double eps = 0.2;
  std::optional<std::uint64_t> seed;
  std::string regime = "practical";
  std::string g = "l1";
  bool with_oracle = false;
  std::string emit_csv;
  std::size_t threads = 0;
  std::string calibration = kDefaultCalibrationPath;
  std::string save_sketch;
  std::vector<std::string> load_sketch;
};
void cmd_estimate(const EstimateOptions& opt);

struct CalibrateOptions {
  std::vector<std::size_t> ns{16, 64};
  std::vector<std::string> families{"independent", "perfect-dependence", "mixture:0.5"};
  std::size_t trials = 100;
  std::size_t m = 10000;
  std::optional<std::uint64_t> seed;
  std::string regime = "practical";
  double delta2 = 1.0 / 32.0;
  std::string output = kDefaultCalibrationPath;
};
void cmd_calibrate(const CalibrateOptions& opt);

}  // namespace isk::cli
