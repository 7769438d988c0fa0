#ifndef SBFL_CLI_HPP
#define SBFL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sbfl {

/// Entry point of the `sbfl` tool. `args` excludes the program name.
/// Returns the process exit code; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbfl

#endif  // SBFL_CLI_HPP
