#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "plr/engine.hpp"
#include "plr/oracle.hpp"

namespace plr::cli {

// Exit statuses shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kNotSubsumed = 1,  // check --exit-status; bench with mismatches
  kUsage = 2,
  kParse = 3,
  kSignature = 4,
  kOracle = 5,
  kFile = 6,
  kUnknownClass = 7,
  kResource = 8,
  kInternal = 9,
};

/// A file could not be read or written.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ParseError located in a named file.
class FileParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad flag combination detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Either `file` (built-in saturation) or `command` (external process).
struct OracleSource {
  std::string file;
  std::string command;
  std::string signature_file;
};

Oracle load_oracle(const OracleSource& source);

/// Caps and timeouts from PLR_CACHE_CAP / PLR_ORACLE_TIMEOUT_MS.
std::size_t env_cache_cap();
std::optional<std::chrono::milliseconds> env_oracle_timeout();

/// Runs `body`, mapping exceptions to exit statuses and printing the message
/// to stderr.
int guarded(const std::function<int()>& body);

/// Called from a catch block: rethrows a ParseError as FileParseError naming `file`.
[[noreturn]] void rethrow_with_file(const std::string& file);

template <typename T, typename Parse>
T parse_file(const std::string& file, Parse&& parse) {
  const std::string text = read_file(file);
  try {
    return parse(text);
  } catch (...) {
    rethrow_with_file(file);
  }
}

}  // namespace plr::cli
