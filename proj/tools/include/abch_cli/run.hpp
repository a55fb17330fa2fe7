#pragma once

#include "abch/complex.hpp"
#include "abch/spectrum.hpp"
#include "abch_cli/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace abch::cli {

enum class Backend { Exact, Numeric, Both };

inline const std::vector<std::string> kCommands{"check",   "cohomology", "spectra", "diagram",
                                                "ddbar",   "inequality", "abc",     "cover"};

struct RunConfig {
  std::string command;
  std::filesystem::path model;
  std::optional<std::filesystem::path> metric;
  std::optional<std::filesystem::path> cover;
  /// Unset: `spectra` runs both backends, everything else runs exact.
  std::optional<Backend> backend;
  Format format = Format::Markdown;
  std::optional<Bidegree> pq;
  std::uint64_t seed = kDefaultSeed;
  Tolerance tol;
  std::size_t samples = 1000;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInputError = 2;

/// Runs one command. The rendered report goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Builds the report without rendering it. Library errors propagate as abch::Error.
Report build_report(const RunConfig& config);

/// Full command line handling (CLI11), including --out and ABCH_TOL_REL.
int main_entry(int argc, char** argv);

Bidegree parse_pq(const std::string& text);

}  // namespace abch::cli
