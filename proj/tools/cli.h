#ifndef CROSSDOM_TOOLS_CLI_H_
#define CROSSDOM_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace crossdom::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitAnalysisError = 3;
inline constexpr int kExitUsage = 64;

inline constexpr int kJsonSchemaVersion = 1;

// Runs `amr-crossdom` with args[0] as the program name. Reports go to `out`,
// diagnostics to `err`; the return value is the process exit code.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace crossdom::cli

#endif  // CROSSDOM_TOOLS_CLI_H_
