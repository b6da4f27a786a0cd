#pragma once

// The four pipelines behind `bethe count|solve|verify|lines`.
// Exit codes: 0 pass, 2 usage or config error, 3 count mismatch, 4 failed check.

#include "bethe_cli/config.hpp"
#include "bethe_cli/report.hpp"

#include <optional>
#include <string>

namespace bethe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCountMismatch = 3;
inline constexpr int kExitVerification = 4;

/// Acceptance thresholds for the Bethe and Fuchsian checks.
inline constexpr double kCheckTol = 1e-8;

struct CommandResult {
    RunReport report;
    std::string summary;  ///< human-readable, for standard output
};

CommandResult run_count(const RunConfig& cfg);

/// Throws ConfigError in the CriticalLines regime (use run_lines).
CommandResult run_solve(const RunConfig& cfg);

/// Verifies orbits from `prior` when given, after checking its config hash,
/// otherwise solves first.
CommandResult run_verify(const RunConfig& cfg, const std::optional<RunReport>& prior = std::nullopt);

/// Throws ConfigError outside the CriticalLines regime.
CommandResult run_lines(const RunConfig& cfg);

}  // namespace bethe::cli
