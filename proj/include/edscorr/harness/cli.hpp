#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace edscorr::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitNoResult = 2,
  kExitConfig = 3,
};

// Runs the edscorr command line (args exclude the program name). Results go
// to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edscorr::harness
