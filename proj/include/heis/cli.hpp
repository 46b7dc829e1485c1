#pragma once

namespace heis {

/// Exit codes: 0 success, 1 execution or usage error, 2 a checked criterion failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCriteria = 2;

int run_cli(int argc, char** argv);

}  // namespace heis
