#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdmt::cli {

enum ExitCode : int { kOk = 0, kUsageError = 2, kDataError = 3 };

// args[0] is the program name. Reports go to `out` (or --output), messages
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdmt::cli
