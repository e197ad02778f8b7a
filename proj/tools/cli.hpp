#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csrpoly/verify.hpp"

namespace csrpoly::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kCapacityError = 3,
};

/// Test seams.
struct Hooks {
  /// Replaces the forward map checked by `verify` when set.
  ForwardMapFn verify_forward_map;
};

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` or to declared output files, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

}  // namespace csrpoly::cli
