#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace procframe::cli {

/// Exit statuses shared by every subcommand.
enum Exit : int {
    kOk = 0,
    kNegative = 1,  // not equivalent, or violations found
    kUsage = 2,     // bad arguments or unparsable input
    kFailure = 3,   // any other library error
};

/// Runs one command line (without the program name) and returns its exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace procframe::cli
