#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thermocone::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on a domain error and 2 on invalid input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for parallel sweeps: THERMOCONE_THREADS if set to a positive
/// integer, else the hardware concurrency.
unsigned worker_count();

}  // namespace thermocone::cli
