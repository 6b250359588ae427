#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffnn::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIoOrParse = 2,
    kValidation = 3,
    kGradcheckFailed = 4,
};

/// Entry point of the `ffnn` tool. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffnn::cli
