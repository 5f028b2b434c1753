#pragma once

// The susy-pauli command-line front end as a callable function so tests can
// drive it in-process.

#include <ostream>
#include <string>
#include <vector>

namespace susy::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace susy::cli
