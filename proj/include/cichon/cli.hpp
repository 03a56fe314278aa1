#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cichon::cli {

/// Exit codes: 0 success or relation holds, 1 relation or law fails,
/// 2 malformed input or violated precondition.
enum Exit : int { kOk = 0, kFails = 1, kBadInput = 2 };

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics (prefixed by the error name) to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cichon::cli
