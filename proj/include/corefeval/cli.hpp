#pragma once

#include <functional>
#include <ostream>

namespace corefeval {

class InspectorServer;

namespace cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,   // unreadable or unparseable input, failed batch document
  kMismatch = 2,  // universes differ under --on-mismatch error
};

struct Hooks {
  /// Called once `inspect --serve` is accepting requests, with the bound
  /// port. Tests use it to query the server and then stop it.
  std::function<void(InspectorServer&, int port)> on_serving;
};

/// Runs `corefeval <command> ...`. Reports go to `out`, diagnostics to
/// `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

}  // namespace cli
}  // namespace corefeval
