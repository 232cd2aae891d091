#pragma once

#include <vector>
#include <string>

namespace entsim::cli {

// Exit codes: 0 ok, 2 configuration error, 3 numerical failure, 4 I/O.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

int run(const std::vector<std::string>& args);  // args without argv[0]
int run(int argc, const char* const* argv);

}  // namespace entsim::cli
