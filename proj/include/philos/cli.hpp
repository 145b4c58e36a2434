#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace philos::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;  // verification failure or runtime error
inline constexpr int exit_usage = 2;

/// Default directory for output files: $PHILOS_OUT_DIR, else ".".
std::string default_output_dir();

/// Entry point behind the `philos` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace philos::cli
