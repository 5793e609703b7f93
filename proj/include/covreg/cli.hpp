#pragma once

#include <string>
#include <vector>

namespace covreg {

/// Entry point of the covreg tool. Subcommands: fit, predict, evaluate, map,
/// simulate. Returns 0 on success; on failure prints a one-line diagnostic
/// (plus usage for flag errors) and returns nonzero.
int cli_main(int argc, char **argv);

/// Same, with the arguments after the program name.
int cli_main(const std::vector<std::string> &args);

} // namespace covreg
