#pragma once

// Batch front end. `run` takes the arguments after the program name and
// returns the report text and exit status instead of touching the process
// streams, so reports can be compared byte for byte.

#include <string>
#include <vector>

namespace defect::cli {

enum ExitCode : int {
  kComputed = 0,
  kExpectationFailed = 1,
  kInputError = 2,
  kUndetermined = 3,
};

struct Result {
  int exit_code = kComputed;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args);

}  // namespace defect::cli
