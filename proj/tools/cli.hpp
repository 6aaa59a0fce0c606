#ifndef TPTD_TOOLS_CLI_HPP
#define TPTD_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tptd/experiment.hpp"

namespace tptd::cli {

/// Arguments after the `run` subcommand. Throws UsageError.
[[nodiscard]] ExperimentConfig parse_run_args(const std::vector<std::string>& args);

/// Entry point: `run ...` or `hv --input solutions.csv [--ref 1.1]`.
/// Returns 0 on success, 1 on a failed trial or I/O error, 2 on usage errors.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tptd::cli

#endif  // TPTD_TOOLS_CLI_HPP
