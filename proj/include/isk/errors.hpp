#pragma once

#include <stdexcept>
#include <string>

namespace isk {

/// Invalid parameter combination (rep counts under their floor, eps out of
/// range, mismatched seeds on merge). The CLI maps it to exit code 3.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed external input (stream files, sketch checkpoints). Exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isk
