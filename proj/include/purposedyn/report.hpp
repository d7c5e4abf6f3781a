#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "purposedyn/scenario.hpp"

namespace purposedyn {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr const char* kCommands[] = {"steady-state",        "path",       "compare-ownership",
                                            "comparative-statics", "sosd-sweep", "fosd-shift",
                                            "validate"};

/// Command-line overrides of scenario values.
struct RunOptions {
  std::optional<std::size_t> grid;
  std::optional<int> horizon;
  std::optional<double> m0;
  std::vector<double> gammas;
  std::vector<double> shifts;
};

/// Runs one subcommand, writes its artifacts plus run_manifest.json into
/// out_dir (created if missing) and prints a human-readable table to `log`.
/// Errors propagate as the library's exception types.
void run_command(const std::string& command, const Scenario& scenario,
                 const std::filesystem::path& out_dir, const RunOptions& options,
                 std::ostream& log);

}  // namespace purposedyn
