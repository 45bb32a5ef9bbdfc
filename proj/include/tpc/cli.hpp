#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tpc {

// Subcommands: generate, neighbors, certainty, complete, evaluate, experiment.
// Returns the process exit code; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tpc
