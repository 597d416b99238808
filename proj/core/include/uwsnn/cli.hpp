#pragma once

#include <string>
#include <vector>

namespace uwsnn::cli {

/// Dispatches to the tool's subcommands. `args` excludes the program name.
/// Returns the process exit status; diagnostics go to the error stream and
/// data to the output stream.
int run(const std::vector<std::string>& args);

}  // namespace uwsnn::cli
