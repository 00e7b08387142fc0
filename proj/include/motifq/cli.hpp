#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace motifq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `motifq` tool. Returns 0 on success, 1 on usage
/// errors and 2 on data errors; diagnostics go to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace motifq
