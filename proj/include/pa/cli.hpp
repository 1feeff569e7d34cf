#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pa {

// Exit codes shared by every command.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnknown = 3;

// Runs one command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pa
