#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stripgain::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_analysis = 2;
inline constexpr int exit_input = 3;

/// Runs one invocation in-process. `args` excludes the program name.
/// JSON envelopes and CSV go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stripgain::cli
