#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syzygy/exactalg.hpp"

namespace syzygy::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum ExitCode : int { kOk = 0, kError = 1, kViolation = 2, kInconclusive = 3 };

/// Everything one invocation needs. Unset optional fields take their
/// per-command defaults.
struct RunConfig {
  std::string command;
  std::string variety = "pn:1";
  std::string A;
  std::string B = "0";
  std::int64_t d = 1;
  std::optional<int> q;
  std::optional<int> p_limit;
  std::vector<std::string> H;
  std::string L;
  std::array<std::uint32_t, 2> primes = kDefaultPrimes;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string format = "table";
  std::uint64_t size_cap = 5'000'000;

  /// Canonical argument list; parsing it yields an identical config.
  std::vector<std::string> to_args() const;
  std::string canonical() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Carries the rendered help text when --help is given.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a command line (without the program name). Flags fall back to
/// SYZYGY_* environment variables. Throws InputError on bad input.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs a parsed config; returns the process exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute, mapping every error to an exit code and a message.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace syzygy::cli
