#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfrucht {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kLibraryVersion = "0.1.0";

/// Runs one CLI subcommand.  Returns the process exit code:
/// 0 = verified / rigid / certified, 1 = verification failed or inconclusive,
/// 2 = input error.  The report JSON goes to `out` (or the --out file);
/// human-readable errors go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace qfrucht
