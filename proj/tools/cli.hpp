#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convbody::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace convbody::cli
