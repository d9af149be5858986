#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace affine_lab::cli {

enum ExitCode : int { kSuccess = 0, kError = 1, kUndecided = 2 };

/// Runs one affine-lab command. `args` excludes the program name; `env_tol` is
/// the value of AFFINE_LAB_TOL if set (the --tol flag takes precedence).
/// Machine output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_tol = std::nullopt);

}  // namespace affine_lab::cli
