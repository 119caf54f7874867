#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isk/stream.hpp"

namespace isk::cli {

/// Pair file: optional "# n=<n>" header, then "i j" per line; other '#'
/// lines are comments. Errors carry the 1-based line number.
struct PairFileInfo {
  std::optional<std::size_t> header_n;
  std::uint64_t events = 0;
  std::uint64_t max_index = 0;
};

/// Parses the whole file, calling on_event for each event in order.
PairFileInfo scan_pair_file(const std::string& path,
                            const std::function<void(const StreamEvent&)>& on_event);

/// The header value, if the file has one (reads up to the first event).
std::optional<std::size_t> read_header_n(const std::string& path);

void write_pair_file(std::ostream& out, std::size_t n, const std::vector<StreamEvent>& events,
                     bool header);

}  // namespace isk::cli
