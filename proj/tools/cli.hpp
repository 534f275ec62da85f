#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdrank::cli {

/// Runs one pdrank command. `args` excludes the program name. Results go to
/// --out when given, otherwise to `out`; failures print one line to `err`:
///   pdrank: error code=<exit> kind=<kind>: <message>
/// Returns the process exit code (see ExitCode).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdrank::cli
