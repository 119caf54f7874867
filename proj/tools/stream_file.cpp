#include "stream_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

#include "isk/errors.hpp"

namespace isk::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line) + ": ";
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::optional<std::size_t> parse_header(std::string_view body, const std::string& path,
                                        std::size_t line) {
  body = trim(body);
  if (body.rfind("n=", 0) != 0) return std::nullopt;
  std::uint64_t n = 0;
  if (!parse_u64(trim(body.substr(2)), n) || n == 0) {
    throw InputError(where(path, line) + "bad header, expected '# n=<positive integer>'");
  }
  return static_cast<std::size_t>(n);
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  return in;
}

}  // namespace

PairFileInfo scan_pair_file(const std::string& path,
                            const std::function<void(const StreamEvent&)>& on_event) {
  std::ifstream in = open(path);
  PairFileInfo info;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (info.events == 0 && !info.header_n) info.header_n = parse_header(text.substr(1), path, line);
      continue;
    }
    const auto split = text.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw InputError(where(path, line) + "expected two indices, got '" + std::string(text) + "'");
    }
    StreamEvent e;
    const std::string_view rest = trim(text.substr(split));
    if (!parse_u64(text.substr(0, split), e.i) || !parse_u64(rest, e.j)) {
      throw InputError(where(path, line) + "malformed event '" + std::string(text) + "'");
    }
    if (e.i == 0 || e.j == 0) throw InputError(where(path, line) + "indices are 1-based");
    if (info.header_n && (e.i > *info.header_n || e.j > *info.header_n)) {
      throw InputError(where(path, line) + "index outside [1, " + std::to_string(*info.header_n) + "]");
    }
    ++info.events;
    info.max_index = std::max({info.max_index, e.i, e.j});
    try {
      on_event(e);
    } catch (const InputError& err) {
      throw InputError(where(path, line) + err.what());
    }
  }
  return info;
}

std::optional<std::size_t> read_header_n(const std::string& path) {
  std::ifstream in = open(path);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (text.front() != '#') return std::nullopt;
    if (auto n = parse_header(text.substr(1), path, line)) return n;
  }
  return std::nullopt;
}

void write_pair_file(std::ostream& out, std::size_t n, const std::vector<StreamEvent>& events,
                     bool header) {
  if (header) out << "# n=" << n << '\n';
  for (const auto& e : events) out << e.i << ' ' << e.j << '\n';
}

}  // namespace isk::cli
