#pragma once

#include <string>
#include <vector>

namespace flutterid::cli {

// Exit codes: 0 success, 2 config error, 3 data error, 4 non-convergence,
// 5 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNonConvergence = 4;
inline constexpr int kExitNumerical = 5;

int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // without program name

}  // namespace flutterid::cli
