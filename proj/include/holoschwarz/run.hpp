#pragma once

#include <string>
#include <vector>

#include "holoschwarz/config.hpp"

namespace holoschwarz {

namespace exit_code {
inline constexpr int kPass = 0;
inline constexpr int kCriterionFails = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kIdentityFailure = 3;
inline constexpr int kCollision = 4;
inline constexpr int kNumericalFailure = 5;
}  // namespace exit_code

struct RunReport {
  /// key=value lines, 17 significant digits for reals.
  std::string summary;
  std::vector<std::string> artifacts;
  int exit_code = exit_code::kPass;
};

/// Runs the configured subcommand. Domain and numerical errors are folded into
/// the report (exit codes 2 and 5) rather than thrown.
RunReport run(const RunConfig& config);

}  // namespace holoschwarz
