#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topofree {

/// Error thrown for invalid inputs (unknown ids, malformed words, bad
/// partitions, parse errors). The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

/// FNV-1a 64-bit, used for input hashes in certificates.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v);

/// Splits on whitespace, dropping empty tokens.
std::vector<std::string> split_ws(std::string_view line);

/// Splits on a single character delimiter, trimming surrounding whitespace.
std::vector<std::string> split_on(std::string_view text, char delim);

std::string trim(std::string_view s);

}  // namespace topofree
