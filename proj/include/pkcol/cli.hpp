#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pkcol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Environment variable naming the directory for relative --out paths.
inline constexpr const char* kOutputDirEnv = "PKCOL_OUTPUT_DIR";

/// Runs one subcommand. args[0] is the program name. Results go to --out
/// (or `out`), diagnostics to `err`. Returns the process exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pkcol::cli
