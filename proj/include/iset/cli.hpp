#pragma once

#include <iosfwd>
#include <string>

namespace iset {

inline constexpr const char* kToolVersion = "iset 0.1.0";

/// Runs the full command-line surface (generate | design | estimate |
/// simulate | benchmark) and returns the process exit code:
/// 0 success, 2 parameter/schema error, 3 data error, 4 degenerate design,
/// 1 internal error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iset
