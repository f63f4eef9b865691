#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gns::cli {

/// Exit codes shared by the subcommands.
enum Exit : int {
  kOk = 0,
  kUsage = 1,          // malformed flags, I/O errors, unknown ids
  kInvalid = 2,        // hypothesis violations, unresolved dilation, side conditions
  kGate = 3,           // smallness gate failed under the abort policy
  kNoConvergence = 4,  // Picard divergence or numerical blow-up
  kResidual = 5,       // converged but the residual exceeds its threshold
};

/// Runs one subcommand; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gns::cli
