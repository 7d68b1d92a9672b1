#pragma once

// Batch front-end: build-operators, check-ccr, expect, oracle, modes-dump.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qpbeam/io.hpp"

namespace qpbeam::cli {

enum ExitCode : int { kSuccess = 0, kToleranceFailure = 2, kConfigError = 3 };

struct Options {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> state;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> density;  ///< oracle: density map CSV
  std::optional<int> ncut;
  bool strict = false;
};

/// Loads the config (or defaults) and applies the --ncut / --out overrides.
RunConfig resolve_config(const Options& options);

/// Each command prints a JSON document to `out` and returns an exit code.
/// Config, parse and I/O problems propagate as exceptions.
int cmd_build_operators(const RunConfig& config, std::ostream& out);
int cmd_check_ccr(const RunConfig& config, std::ostream& out);
int cmd_expect(const RunConfig& config, const std::filesystem::path& state, std::ostream& out);
int cmd_oracle(const RunConfig& config, const Options& options, std::ostream& out,
               std::ostream& err);
/// CSV "n,x,re,im,abs2" of u_n(x, z) for n <= ncut on the config grid.
int cmd_modes_dump(const RunConfig& config, std::ostream& out);

/// Parses argv, dispatches, and maps exceptions to kConfigError.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qpbeam::cli
