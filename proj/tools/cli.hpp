#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace permstat::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDomainError = 2;
inline constexpr int kNotEquidistributed = 3;

// Runs one command. `args` excludes the program name. Payload goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permstat::cli
