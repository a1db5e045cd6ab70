#pragma once

namespace cflow::cli {

// Full command-line front end (subcommands: aho, dwp, nonadiabatic, density,
// potential, validate). Returns the process exit code: 0 success, 1 usage or
// numerical error, 2 validation failure.
int run(int argc, const char* const* argv);

}  // namespace cflow::cli
