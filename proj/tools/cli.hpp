#pragma once

namespace commsim {

// Whole command-line tool behind one call so tests can drive it directly.
// Returns 0 on success, 2 on configuration errors, 1 on invariant failures.
int run_cli(int argc, const char* const* argv);

}  // namespace commsim
