#pragma once

#include <ostream>

namespace digs::cli {

// Exit codes: 0 success, 1 configuration/usage error, 2 backend failure.
inline constexpr int kExitConfig = 1;
inline constexpr int kExitBackend = 2;

// Subcommands: sweep, zeros, presets, index. Data goes to `out` unless an
// output path is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace digs::cli
