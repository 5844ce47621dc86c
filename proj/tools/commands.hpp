#pragma once

// Subcommands of the coherence tool, callable without a process boundary so
// tests can drive them directly.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace coherence::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

struct RunConfig {
  std::uint64_t seed = 42;
  int restarts = 32;
  double tolerance = 1e-8;
  std::filesystem::path output_path = ".";
  int grid_points = 50;
};

/// Throws std::invalid_argument naming the first non-positive field.
void validate(const RunConfig& cfg);

/// Writes fig1.csv (theta, cgen, h2_cos2) and fig2.csv (theta, alpha_star)
/// into cfg.output_path; angles are fractions of pi.
int cmd_figures(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// measure is one of cr, cf, rank. Prints the value, then a JSON report line.
int cmd_compute(const std::filesystem::path& state_file, const std::string& measure,
                const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// protocol is one of unitary, teleport, sio. Writes bundle_<protocol>.json
/// into cfg.output_path and prints the verification report as JSON.
int cmd_simulate(const std::filesystem::path& channel_file, const std::string& protocol,
                 const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// suite is one of all, simulate, measures, power, feasibility. Prints a JSON
/// report; returns kPass iff every check passed.
int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// printf-style %.12g, the number format of every CSV the tool writes.
std::string format_number(double x);

} // namespace coherence::cli
