#pragma once

#include <string>
#include <vector>

namespace slu1 {

/// Exit codes of run_cli.
enum ExitCode { exit_ok = 0, exit_validation = 2, exit_numerical = 3 };

/// Subcommands: solve, singularities, count, cone-phi, fibration,
/// search-multiplicity, embed. Artifacts go to --out with a manifest.json.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

/// Worker cap from SL_U1_THREADS (default 1).
int thread_cap();

} // namespace slu1
