#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ribopt/io.hpp"

namespace ribopt::cli {

extern const std::vector<std::string> kCommands;

// One-line summary shown in `--help`.
std::string summarize(const std::string& command);

// Column sets for the `--help` footer of each subcommand.
std::string describe_outputs(const std::string& command);

// Runs one subcommand; the main CSV goes to `out`, progress to `log`.
// Errors are reported by throwing the library's exception types.
void run(const std::string& command, const KeyValueConfig& config, std::ostream& out, std::ostream& log);

}  // namespace ribopt::cli
