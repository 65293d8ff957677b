#pragma once

namespace tvseg {

// Parses and runs one subcommand. Exit codes: 0 success, 1 usage error,
// 2 I/O error, 3 numerical failure (non-convergence under
// --strict-convergence).
int run_cli(int argc, const char* const* argv);

}  // namespace tvseg
