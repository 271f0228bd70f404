// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_CLI_HPP
#define DOHERTYNET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dohertynet::cli {

// Exit codes are part of the command-line contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,   // bad flags or configuration
  kExitDomain = 2,  // parse errors, infeasible designs, singular networks
  kExitIo = 3,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dohertynet::cli

#endif  // DOHERTYNET_CLI_HPP
