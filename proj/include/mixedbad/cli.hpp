#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mixedbad {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitStrategy = 2,
  kExitVerification = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mixedbad
