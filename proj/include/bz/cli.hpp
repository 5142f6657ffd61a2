#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bz {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Run the command line; args[0] is the program name. JSON results go to
/// out, usage messages to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bz
