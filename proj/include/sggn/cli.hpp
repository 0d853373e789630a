#ifndef SGGN_CLI_HPP
#define SGGN_CLI_HPP

#include <string>
#include <vector>

namespace sggn {

// Dispatches the train | regress | newton | ntk | bench subcommands.
// Returns 0 on success, 1 on convergence failure, 2 on usage/input errors.
int run_command(const std::vector<std::string>& args);
int run_command(int argc, const char* const* argv);

}  // namespace sggn

#endif  // SGGN_CLI_HPP
