#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairdiv::cli {

enum ExitCode : int { ok = 0, unsatisfied = 1, usage = 2, internal = 3 };

// Runs one command line (args[0] is the program name). JSON goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairdiv::cli
