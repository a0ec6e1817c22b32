#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace njump::cli {

/// Exit codes of run().
enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2 };

/// Runs one command line (args excludes the program name). Results go to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace njump::cli
