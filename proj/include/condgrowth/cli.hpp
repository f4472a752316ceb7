#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace condgrowth::cli {

/// Exit codes: 0 success, 1 bad input (single "error: ..." line on err),
/// 2 precondition failure such as a rank-deficient matrix.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitPrecondition = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace condgrowth::cli
