#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace liehom::cli {

/// Exit codes; a mathematical verdict and bad input never share a code.
inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kInputError = 2;

inline constexpr double kMinStep = 1e-8;
inline constexpr double kMaxStep = 1e-1;
inline constexpr std::size_t kMaxSamples = 1000000;

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<std::string> pair;
  std::optional<std::string> op;
  /// all-pairs | complement-pairs | ad-specialized; chosen automatically when unset.
  std::optional<std::string> mode;
  std::string report = "text";
  std::size_t samples = 20;
  double step = 1e-4;
  std::uint64_t seed = 20240501;
  double theta = 1.0;
  std::optional<std::string> out;
  /// harness only: per-sample deviations as CSV.
  std::optional<std::string> csv;
};

/// Runs one command; the report goes to `out` (or the --out file), problems
/// with the input to `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and executes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liehom::cli
