#pragma once

#include <iosfwd>

namespace kary::cli {

/// Process exit codes; each is one outcome category.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,           // verification / assembly / execution refused
  kExitUsage = 2,             // invalid arguments
  kExitIo = 3,                // unreadable input or unwritable output
  kExitDuplicatePending = 4,  // anchor of an already pending digest
  kExitEmptyPool = 5,         // mine with nothing pending
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kary::cli
