#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohr/spaces.hpp"

namespace bohrkit::cli {

enum class Command { Beta, Gamma, Sidon, Table, Verify };
enum class Format { Csv, Json };
enum class Check { Moebius, Bohr, Wiener, Corner };

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kCacheError = 4 };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::Beta;
  std::size_t n_first = 1;
  std::size_t n_last = 1;
  std::vector<double> lambdas{1.0};
  bohr::Exponent q = bohr::Exponent::infinity();
  std::size_t d = 1;
  bohr::Exponent p = bohr::Exponent::finite(2.0);
  std::uint32_t m = 2;
  std::uint32_t m_max = 6;
  std::uint64_t budget = 0;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> cache_path;
  bool use_cache = true;
  Format format = Format::Csv;
  bool stamp = false;
  std::optional<double> k_disk;

  // verify
  Check check = Check::Moebius;
  std::vector<double> radii{0.35, 1.0 / 3.0};
  std::size_t grid = 1000;
  std::size_t samples = 100;
  std::uint32_t truncation = 60;

  /// Throws ConfigError with an actionable message.
  void validate() const;
};

/// "5" or "2..20".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text);
/// Comma-separated reals; each may be a fraction such as "1/3".
std::vector<double> parse_real_list(const std::string& text);

/// Runs one command and writes the report to `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bohrkit::cli
