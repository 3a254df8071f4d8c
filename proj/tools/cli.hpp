#pragma once

#include <ostream>

namespace colebrook::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNonConvergence = 3,
  kTableMismatch = 4,
  kIo = 5,
};

// Entry point of the `colebrook` command; writes to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace colebrook::cli
